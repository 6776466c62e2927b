#include "csax/fm_index.hpp"

#include <algorithm>

#include "csax/suffix.hpp"

namespace csax {

FMIndex FMIndex::build(const Text& t, u32 b) {
    Text rev = reverse_text(t);
    SuffixArrayBundle bundle = build_suffix_array(rev);
    SequenceIndex seq = SequenceIndex::build(bundle.bwt, rev.sigma);
    return assemble(std::move(seq), bundle.sa, b);
}

FMIndex FMIndex::assemble(SequenceIndex bwt_rev_seq, const std::vector<u32>& sa_rev, u32 b) {
    if (b == 0) throw std::invalid_argument("sample rate must be positive");
    FMIndex fm;
    fm.n_ = bwt_rev_seq.size();
    fm.bwt_rev_ = std::move(bwt_rev_seq);
    fm.irx_ = IntervalRankIndex::build(fm.bwt_rev_);

    u32 sigma = fm.bwt_rev_.sigma();
    fm.acc_.assign(sigma + 1, 0);
    for (u32 a = 0; a < sigma; ++a)
        fm.acc_[a + 1] = fm.acc_[a] + fm.bwt_rev_.symbol_count(a);

    size_t n = fm.n_;
    fm.samples_.b = b;
    std::vector<bool> marked(n, false);
    for (size_t r = 0; r < n; ++r) {
        if (sa_rev[r] % b == 0 || sa_rev[r] == n - 1) {
            marked[r] = true;
            fm.samples_.values.push_back(sa_rev[r]);
        }
    }
    fm.samples_.marked = BitVec::from_bools(marked);
    std::vector<u32> isa = invert_permutation(sa_rev);
    fm.samples_.inv_samples.assign((n - 1) / b + 1, 0);
    for (size_t p = 0; p < n; p += b) fm.samples_.inv_samples[p / b] = isa[p];
    return fm;
}

std::optional<std::pair<size_t, size_t>> FMIndex::backward_step(Symbol a, size_t l, size_t r,
                                                                QueryStats* qs) const {
    size_t lo = bwt_rev_.rank(a, static_cast<i64>(l) - 1, qs);
    size_t hi = bwt_rev_.rank(a, static_cast<i64>(r), qs);
    if (lo == hi) return std::nullopt;
    return std::make_pair(acc_[a] + lo, acc_[a] + hi - 1);
}

std::pair<size_t, size_t> FMIndex::backward_step_with_ranks(Symbol a, size_t rank_lo,
                                                            size_t rank_hi) const {
    return {acc_[a] + rank_lo, acc_[a] + rank_hi - 1};
}

size_t FMIndex::lf(size_t j, QueryStats* qs) const {
    Symbol a = bwt_rev_.access(j);
    return acc_[a] + bwt_rev_.partial_rank(j, qs) - 1;
}

std::vector<u64> FMIndex::locate(size_t l, size_t r, size_t plen, QueryStats* qs) const {
    if (l > r || r >= n_) throw std::out_of_range("FMIndex::locate range");
    std::vector<u64> out;
    out.reserve(r - l + 1);
    for (size_t row = l; row <= r; ++row) {
        size_t j = row, steps = 0;
        while (!samples_.marked.get(j)) {
            j = lf(j, qs);
            ++steps;
        }
        u64 pos_rev = samples_.values[samples_.marked.rank1(static_cast<i64>(j)) - 1] + steps;
        i64 pos = static_cast<i64>(n_) - 1 - static_cast<i64>(pos_rev) - static_cast<i64>(plen);
        if (pos < 0) pos += static_cast<i64>(n_);  // occurrences touching the sentinel
        out.push_back(static_cast<u64>(pos));
    }
    return out;
}

std::vector<Symbol> FMIndex::extract(size_t i, size_t len, QueryStats* qs) const {
    if (i >= n_) throw std::out_of_range("FMIndex::extract start");
    len = std::min(len, n_ - i);
    std::vector<Symbol> out;
    if (len == 0) return out;
    out.reserve(len);
    size_t last = i + len - 1;
    if (i <= n_ - 2) {
        // T[i..min(last, n-2)] maps to the reversed-text range [p..q]
        size_t jhi = std::min(last, n_ - 2);
        size_t p = n_ - 2 - jhi, q = n_ - 2 - i;
        size_t b = samples_.b;
        size_t x = std::min(((q + 1) + b - 1) / b * b, n_ - 1);
        size_t row = x == n_ - 1 ? 0 : samples_.inv_samples[x / b];
        for (size_t t = x; t-- > p;) {
            Symbol c = bwt_rev_.access(row);
            if (t <= q) out.push_back(c);  // arrives in T order
            row = lf(row, qs);
        }
    }
    if (last == n_ - 1) out.push_back(0);
    return out;
}

void FMIndex::save(Writer& w) const {
    w.put_u64(n_);
    bwt_rev_.save(w);
    irx_.save(w);
    w.put_vec(acc_);
    w.put_u32(samples_.b);
    w.put_u64(samples_.marked.size());
    w.put_vec(samples_.marked.words());
    w.put_vec(samples_.values);
    w.put_vec(samples_.inv_samples);
}

FMIndex FMIndex::load(Reader& r) {
    FMIndex fm;
    fm.n_ = r.get_u64();
    fm.bwt_rev_ = SequenceIndex::load(r);
    fm.irx_ = IntervalRankIndex::load(r);
    fm.acc_ = r.get_vec<u64>();
    fm.samples_.b = r.get_u32();
    u64 nb = r.get_u64();
    fm.samples_.marked = BitVec::from_words(nb, r.get_vec<u64>());
    fm.samples_.values = r.get_vec<u64>();
    fm.samples_.inv_samples = r.get_vec<u64>();
    if (fm.n_ != fm.bwt_rev_.size() || fm.acc_.size() != fm.bwt_rev_.sigma() + 1 ||
        (fm.n_ && fm.acc_.back() != fm.n_) || fm.samples_.b == 0 ||
        fm.samples_.marked.size() != fm.n_ ||
        fm.samples_.values.size() != fm.samples_.marked.ones() ||
        (fm.n_ && fm.samples_.inv_samples.size() != (fm.n_ - 1) / fm.samples_.b + 1))
        throw CorruptIndex("inconsistent index core");
    for (u64 v : fm.samples_.values)
        if (v >= fm.n_) throw CorruptIndex("sample value out of range");
    for (u64 v : fm.samples_.inv_samples)
        if (v >= fm.n_) throw CorruptIndex("inverse sample out of range");
    return fm;
}

}  // namespace csax
