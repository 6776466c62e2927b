#include "csax/interval_rank.hpp"

#include <algorithm>

namespace csax {

static constexpr size_t kNpos = static_cast<size_t>(-1);

IntervalRankIndex IntervalRankIndex::build(const SequenceIndex& seq) {
    IntervalRankIndex irx;
    irx.g_ = seq.group_len();
    size_t m = seq.size(), g = irx.g_;
    size_t ngroups = (m + g - 1) / g;
    irx.a_start_.assign(ngroups + 1, 0);
    std::vector<std::vector<u8>> occ(seq.sigma());
    std::vector<Symbol> touched;
    for (size_t gi = 0; gi < ngroups; ++gi) {
        irx.a_start_[gi] = irx.a_off_.size();
        size_t lo = gi * g, hi = std::min(m, lo + g);
        touched.clear();
        for (size_t i = lo; i < hi; ++i) {
            Symbol a = seq.access(i);
            if (occ[a].empty()) touched.push_back(a);
            occ[a].push_back(static_cast<u8>(i - lo));
        }
        std::sort(touched.begin(), touched.end());
        for (Symbol a : touched) {
            irx.a_off_.push_back(occ[a].front());
            irx.list_start_.push_back(irx.list_off_.size());
            irx.list_off_.insert(irx.list_off_.end(), occ[a].begin(), occ[a].end());
            occ[a].clear();
        }
    }
    irx.a_start_[ngroups] = irx.a_off_.size();
    irx.list_start_.push_back(irx.list_off_.size());
    return irx;
}

size_t IntervalRankIndex::find_symbol(const SequenceIndex& seq, size_t gi, Symbol a) const {
    size_t lo = a_start_[gi], hi = a_start_[gi + 1];
    size_t base = gi * static_cast<size_t>(g_);
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        Symbol s = seq.access(base + a_off_[mid]);
        if (s == a) return mid;
        if (s < a)
            lo = mid + 1;
        else
            hi = mid;
    }
    return kNpos;
}

std::optional<u8> IntervalRankIndex::rightmost_leq(const SequenceIndex& seq, size_t gi, Symbol a,
                                                   u8 hi_off) const {
    size_t e = find_symbol(seq, gi, a);
    if (e == kNpos) return std::nullopt;
    auto first = list_off_.begin() + list_start_[e];
    auto last = list_off_.begin() + list_start_[e + 1];
    auto it = std::upper_bound(first, last, hi_off);
    if (it == first) return std::nullopt;
    return *std::prev(it);
}

std::optional<u8> IntervalRankIndex::leftmost_geq(const SequenceIndex& seq, size_t gi, Symbol a,
                                                  u8 lo_off) const {
    size_t e = find_symbol(seq, gi, a);
    if (e == kNpos) return std::nullopt;
    auto first = list_off_.begin() + list_start_[e];
    auto last = list_off_.begin() + list_start_[e + 1];
    auto it = std::lower_bound(first, last, lo_off);
    if (it == last) return std::nullopt;
    return *it;
}

std::optional<std::pair<size_t, size_t>> IntervalRankIndex::query(const SequenceIndex& seq,
                                                                  Symbol a, size_t i, size_t j,
                                                                  QueryStats* qs) const {
    size_t m = seq.size(), g = g_;
    if (i > j || j >= m) throw std::out_of_range("IntervalRankIndex::query range");
    if (j - i > g) throw std::logic_error("interval wider than group size");
    if (a >= seq.sigma()) throw std::out_of_range("IntervalRankIndex::query symbol");
    if (qs) ++qs->interval_rank;

    size_t gx = i / g, gy = j / g;

    // rightmost occurrence y' <= j, searching the right group first
    size_t ypos = kNpos;
    {
        size_t glo = gy * g;
        u8 hi_off = static_cast<u8>(j - glo);
        auto off = rightmost_leq(seq, gy, a, hi_off);
        if (off && glo + *off >= i) ypos = glo + *off;
        if (ypos == kNpos && gx < gy) {
            auto off2 = rightmost_leq(seq, gx, a, static_cast<u8>(g - 1));
            if (off2 && gx * g + *off2 >= i) ypos = gx * g + *off2;
        }
    }
    if (ypos == kNpos) return std::nullopt;

    // leftmost occurrence x' >= i, symmetric
    size_t xpos = kNpos;
    {
        size_t glo = gx * g;
        auto off = leftmost_geq(seq, gx, a, static_cast<u8>(i - glo));
        if (off && glo + *off <= j) xpos = glo + *off;
        if (xpos == kNpos && gx < gy) {
            auto off2 = leftmost_geq(seq, gy, a, 0);
            if (off2 && gy * g + *off2 <= j) xpos = gy * g + *off2;
        }
    }

    size_t lo_rank = seq.partial_rank(xpos, qs) - 1;
    size_t hi_rank = seq.partial_rank(ypos, qs);
    return std::make_pair(lo_rank, hi_rank);
}

std::vector<IntervalRankIndex::GroupEntry> IntervalRankIndex::group_entries(
    const SequenceIndex& seq, size_t gi) const {
    std::vector<GroupEntry> out;
    size_t base = gi * static_cast<size_t>(g_);
    for (size_t e = a_start_[gi]; e < a_start_[gi + 1]; ++e) {
        GroupEntry ge;
        ge.first_off = a_off_[e];
        ge.symbol = seq.access(base + ge.first_off);
        ge.occ_offs.assign(list_off_.begin() + list_start_[e], list_off_.begin() + list_start_[e + 1]);
        out.push_back(std::move(ge));
    }
    return out;
}

void IntervalRankIndex::save(Writer& w) const {
    w.put_u32(g_);
    w.put_vec(a_off_);
    w.put_vec(a_start_);
    w.put_vec(list_off_);
    w.put_vec(list_start_);
}

IntervalRankIndex IntervalRankIndex::load(Reader& r) {
    IntervalRankIndex irx;
    irx.g_ = r.get_u32();
    irx.a_off_ = r.get_vec<u8>();
    irx.a_start_ = r.get_vec<u64>();
    irx.list_off_ = r.get_vec<u8>();
    irx.list_start_ = r.get_vec<u64>();
    if (irx.g_ == 0 || irx.a_start_.empty() ||
        irx.a_start_.back() != irx.a_off_.size() ||
        irx.list_start_.size() != irx.a_off_.size() + 1 ||
        irx.list_start_.back() != irx.list_off_.size())
        throw CorruptIndex("bad interval-rank tables");
    return irx;
}

}  // namespace csax
