#include "csax/sequence.hpp"

#include <algorithm>

namespace csax {

namespace {
inline size_t rank1_excl(const BitVec& bv, size_t p) {
    return p == 0 ? 0 : bv.rank1(static_cast<i64>(p) - 1);
}
inline size_t rank0_excl(const BitVec& bv, size_t p) {
    return p - rank1_excl(bv, p);
}
}  // namespace

SequenceIndex SequenceIndex::build(const std::vector<Symbol>& s, u32 sigma) {
    if (sigma == 0) throw std::invalid_argument("sigma must be positive");
    for (Symbol a : s)
        if (a >= sigma) throw std::invalid_argument("symbol out of alphabet range");
    SequenceIndex idx;
    idx.m_ = s.size();
    idx.sigma_ = sigma;
    idx.nlevels_ = 1;
    while ((u64{1} << idx.nlevels_) < sigma) ++idx.nlevels_;
    idx.group_len_ = group_size(sigma);
    if (idx.group_len_ > 255)
        throw std::invalid_argument("alphabet too large for byte-wide group offsets");
    idx.build_payload(s);
    idx.build_chunk_dir(s);
    idx.build_prank_dir(s);
    return idx;
}

void SequenceIndex::build_payload(const std::vector<Symbol>& s) {
    std::vector<Symbol> cur = s, next(s.size());
    levels_.reserve(nlevels_);
    zeros_.reserve(nlevels_);
    for (u32 l = 0; l < nlevels_; ++l) {
        u32 shift = nlevels_ - 1 - l;
        BitVec bv(cur.size());
        size_t z = 0;
        for (size_t i = 0; i < cur.size(); ++i) {
            if ((cur[i] >> shift) & 1)
                bv.set(i);
            else
                ++z;
        }
        bv.build_directories();
        // stable partition: zeros first, then ones
        size_t zi = 0, oi = z;
        for (size_t i = 0; i < cur.size(); ++i) {
            if ((cur[i] >> shift) & 1)
                next[oi++] = cur[i];
            else
                next[zi++] = cur[i];
        }
        zeros_.push_back(z);
        levels_.push_back(std::move(bv));
        std::swap(cur, next);
    }
}

void SequenceIndex::build_chunk_dir(const std::vector<Symbol>& s) {
    size_t nchunks = m_ / sigma_ + 1;
    std::vector<std::vector<u32>> counts(sigma_, std::vector<u32>(nchunks, 0));
    for (size_t i = 0; i < m_; ++i) ++counts[s[i]][i / sigma_];
    chunk_dir_.reserve(sigma_);
    for (u32 a = 0; a < sigma_; ++a) {
        BitVecBuilder b;
        for (size_t k = 0; k < nchunks; ++k) {
            b.push_back(false);
            for (u32 c = 0; c < counts[a][k]; ++c) b.push_back(true);
        }
        chunk_dir_.push_back(b.take());
    }
}

void SequenceIndex::build_prank_dir(const std::vector<Symbol>& s) {
    size_t g = group_len_;
    size_t ngroups = (m_ + g - 1) / g;
    prank_ordinal_.resize(m_);
    group_start_.assign(ngroups + 1, 0);
    std::vector<u64> total(sigma_, 0);
    std::vector<u32> in_group(sigma_, 0);
    std::vector<Symbol> touched;
    for (size_t gi = 0; gi < ngroups; ++gi) {
        group_start_[gi] = group_sym_.size();
        size_t lo = gi * g, hi = std::min(m_, lo + g);
        touched.clear();
        for (size_t i = lo; i < hi; ++i) {
            Symbol a = s[i];
            if (in_group[a] == 0) touched.push_back(a);
            prank_ordinal_[i] = static_cast<u8>(++in_group[a]);
        }
        std::sort(touched.begin(), touched.end());
        for (Symbol a : touched) {
            group_sym_.push_back(static_cast<u16>(a));
            group_base_.push_back(total[a]);
        }
        for (Symbol a : touched) {
            total[a] += in_group[a];
            in_group[a] = 0;
        }
    }
    group_start_[ngroups] = group_sym_.size();
}

Symbol SequenceIndex::access(size_t i) const {
    if (i >= m_) throw std::out_of_range("SequenceIndex::access");
    Symbol sym = 0;
    size_t p = i;
    for (u32 l = 0; l < nlevels_; ++l) {
        const BitVec& bv = levels_[l];
        bool b = bv.get(p);
        sym = (sym << 1) | static_cast<Symbol>(b);
        p = b ? zeros_[l] + rank1_excl(bv, p) : rank0_excl(bv, p);
    }
    return sym;
}

size_t SequenceIndex::wm_count_range(Symbol a, size_t lo, size_t hi) const {
    // count of a in S[lo..hi]; simultaneous descent of both endpoints
    size_t p = lo, q = hi + 1;
    for (u32 l = 0; l < nlevels_; ++l) {
        const BitVec& bv = levels_[l];
        bool b = (a >> (nlevels_ - 1 - l)) & 1;
        if (b) {
            p = zeros_[l] + rank1_excl(bv, p);
            q = zeros_[l] + rank1_excl(bv, q);
        } else {
            p = rank0_excl(bv, p);
            q = rank0_excl(bv, q);
        }
    }
    return q - p;
}

size_t SequenceIndex::rank_internal(Symbol a, i64 i) const {
    if (i < 0) return 0;
    size_t k = chunk_of(static_cast<size_t>(i));
    return chunk_rank_base(a, k) + wm_count_range(a, k * sigma_, static_cast<size_t>(i));
}

size_t SequenceIndex::rank(Symbol a, i64 i, QueryStats* qs) const {
    if (a >= sigma_) throw std::out_of_range("SequenceIndex::rank symbol");
    if (i >= static_cast<i64>(m_)) throw std::out_of_range("SequenceIndex::rank index");
    if (qs) ++qs->general_rank;
    return rank_internal(a, i);
}

size_t SequenceIndex::symbol_count(Symbol a) const {
    if (a >= sigma_) throw std::out_of_range("SequenceIndex::symbol_count");
    return chunk_dir_[a].ones();
}

size_t SequenceIndex::select(Symbol a, size_t k) const {
    if (a >= sigma_) throw std::out_of_range("SequenceIndex::select symbol");
    if (k == 0 || k > symbol_count(a)) throw std::out_of_range("SequenceIndex::select ordinal");
    // block start of a at the virtual bottom level
    size_t s = 0;
    for (u32 l = 0; l < nlevels_; ++l) {
        const BitVec& bv = levels_[l];
        bool b = (a >> (nlevels_ - 1 - l)) & 1;
        s = b ? zeros_[l] + rank1_excl(bv, s) : rank0_excl(bv, s);
    }
    size_t pos = s + k - 1;
    for (u32 l = nlevels_; l-- > 0;) {
        const BitVec& bv = levels_[l];
        bool b = (a >> (nlevels_ - 1 - l)) & 1;
        pos = b ? bv.select1(pos - zeros_[l] + 1) : bv.select0(pos + 1);
    }
    return pos;
}

size_t SequenceIndex::partial_rank(size_t i, QueryStats* qs) const {
    if (i >= m_) throw std::out_of_range("SequenceIndex::partial_rank");
    if (qs) ++qs->partial_rank;
    Symbol a = access(i);
    size_t gi = i / group_len_;
    auto base = group_base(gi, a);
    // a sits at position i, so it occurs in group gi
    return *base + prank_ordinal_[i];
}

std::optional<size_t> SequenceIndex::group_base(size_t gi, Symbol a) const {
    size_t lo = group_start_[gi], hi = group_start_[gi + 1];
    auto first = group_sym_.begin() + lo, last = group_sym_.begin() + hi;
    auto it = std::lower_bound(first, last, static_cast<u16>(a));
    if (it == last || *it != a) return std::nullopt;
    return group_base_[it - group_sym_.begin()];
}

std::vector<std::pair<Symbol, size_t>> SequenceIndex::distinct_symbols(size_t l, size_t r) const {
    if (l > r || r >= m_) throw std::out_of_range("SequenceIndex::distinct_symbols");
    std::vector<std::pair<Symbol, size_t>> out;
    struct Node {
        u32 level;
        Symbol prefix;
        size_t lo, hi;  // half-open range at this level
    };
    std::vector<Node> stack;
    stack.push_back({0, 0, l, r + 1});
    while (!stack.empty()) {
        Node nd = stack.back();
        stack.pop_back();
        if (nd.lo >= nd.hi) continue;
        if (nd.level == nlevels_) {
            out.emplace_back(nd.prefix, nd.hi - nd.lo);
            continue;
        }
        const BitVec& bv = levels_[nd.level];
        size_t lo0 = rank0_excl(bv, nd.lo), hi0 = rank0_excl(bv, nd.hi);
        size_t lo1 = zeros_[nd.level] + (nd.lo - lo0);
        size_t hi1 = zeros_[nd.level] + (nd.hi - hi0);
        // push ones first so zeros are processed first: output in symbol order
        stack.push_back({nd.level + 1, (nd.prefix << 1) | 1, lo1, hi1});
        stack.push_back({nd.level + 1, nd.prefix << 1, lo0, hi0});
    }
    return out;
}

size_t SequenceIndex::chunk_rank_base(Symbol a, size_t chunk) const {
    const BitVec& aa = chunk_dir_[a];
    return aa.select0(chunk + 1) - chunk;
}

std::pair<u32, u32> SequenceIndex::encode_rank(Symbol a, i64 i, size_t rank_value) const {
    if (i < 0) return {0, 0};
    u32 k = static_cast<u32>(chunk_of(static_cast<size_t>(i)));
    size_t base = chunk_rank_base(a, k);
    return {k, static_cast<u32>(rank_value - base)};
}

size_t SequenceIndex::decode_rank(Symbol a, u32 chunk, u32 remainder) const {
    return chunk_rank_base(a, chunk) + remainder;
}

u64 SequenceIndex::payload_bits() const {
    u64 bits = 0;
    for (const BitVec& bv : levels_) bits += bv.size() + bv.directory_bits();
    bits += zeros_.size() * 64;
    return bits;
}

u64 SequenceIndex::chunk_dir_bits() const {
    u64 bits = 0;
    for (const BitVec& bv : chunk_dir_) bits += bv.size() + bv.directory_bits();
    return bits;
}

u64 SequenceIndex::prank_dir_bits() const {
    return prank_ordinal_.size() * 8 + group_sym_.size() * 16 + group_base_.size() * 64 +
           group_start_.size() * 64;
}

void SequenceIndex::save(Writer& w) const {
    w.put_u64(m_);
    w.put_u32(sigma_);
    w.put_u32(nlevels_);
    w.put_u32(group_len_);
    for (const BitVec& bv : levels_) {
        w.put_u64(bv.size());
        w.put_vec(bv.words());
    }
    w.put_vec(zeros_);
    for (const BitVec& bv : chunk_dir_) {
        w.put_u64(bv.size());
        w.put_vec(bv.words());
    }
    w.put_vec(prank_ordinal_);
    w.put_vec(group_sym_);
    w.put_vec(group_base_);
    w.put_vec(group_start_);
}

SequenceIndex SequenceIndex::load(Reader& r) {
    SequenceIndex idx;
    idx.m_ = r.get_u64();
    idx.sigma_ = r.get_u32();
    idx.nlevels_ = r.get_u32();
    idx.group_len_ = r.get_u32();
    if (idx.sigma_ == 0 || idx.nlevels_ == 0 || idx.nlevels_ > 32 || idx.group_len_ == 0)
        throw CorruptIndex("bad sequence header");
    for (u32 l = 0; l < idx.nlevels_; ++l) {
        u64 nbits = r.get_u64();
        idx.levels_.push_back(BitVec::from_words(nbits, r.get_vec<u64>()));
    }
    idx.zeros_ = r.get_vec<u64>();
    if (idx.zeros_.size() != idx.nlevels_) throw CorruptIndex("bad zeros table");
    for (u32 a = 0; a < idx.sigma_; ++a) {
        u64 nbits = r.get_u64();
        idx.chunk_dir_.push_back(BitVec::from_words(nbits, r.get_vec<u64>()));
    }
    idx.prank_ordinal_ = r.get_vec<u8>();
    idx.group_sym_ = r.get_vec<u16>();
    idx.group_base_ = r.get_vec<u64>();
    idx.group_start_ = r.get_vec<u64>();
    if (idx.prank_ordinal_.size() != idx.m_ || idx.group_sym_.size() != idx.group_base_.size() ||
        idx.group_start_.empty() || idx.group_start_.back() != idx.group_sym_.size())
        throw CorruptIndex("bad partial-rank directory");
    return idx;
}

}  // namespace csax
