#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "csax/common.hpp"
#include "csax/sequence.hpp"

namespace csax {

// Small interval rank queries: rank_a(i, j) answered within groups of
// group_size(sigma) consecutive positions, valid for windows j - i <= g.
//
// Per group: the distinct symbols encoded as their first positions in the
// group (searched by binary search, comparing through access), and per
// distinct symbol the increasing list of occurrence offsets. Found
// occurrences are turned into rank answers with partial_rank; the general
// rank operation is never invoked.
class IntervalRankIndex {
public:
    IntervalRankIndex() = default;

    static IntervalRankIndex build(const SequenceIndex& seq);

    // <rank_a(i-1), rank_a(j)> if a occurs in S[i..j], absent otherwise.
    // Windows wider than the group size are a caller bug. seq must be the
    // sequence the structure was built from.
    std::optional<std::pair<size_t, size_t>> query(const SequenceIndex& seq, Symbol a, size_t i,
                                                  size_t j, QueryStats* qs = nullptr) const;

    u32 group_len() const { return g_; }
    size_t group_count() const { return a_start_.empty() ? 0 : a_start_.size() - 1; }

    // test-facing view of one group's tables
    struct GroupEntry {
        Symbol symbol;
        u8 first_off;
        std::vector<u8> occ_offs;
    };
    std::vector<GroupEntry> group_entries(const SequenceIndex& seq, size_t gi) const;

    void save(Writer& w) const;
    static IntervalRankIndex load(Reader& r);

private:
    // index into a_off_ of symbol a in group gi, or npos
    size_t find_symbol(const SequenceIndex& seq, size_t gi, Symbol a) const;
    std::optional<u8> rightmost_leq(const SequenceIndex& seq, size_t gi, Symbol a, u8 hi_off) const;
    std::optional<u8> leftmost_geq(const SequenceIndex& seq, size_t gi, Symbol a, u8 lo_off) const;

    u32 g_ = 0;
    std::vector<u8> a_off_;        // per group, first-occurrence offsets, symbol-sorted
    std::vector<u64> a_start_;     // ngroups+1 boundaries into a_off_
    std::vector<u8> list_off_;     // concatenated occurrence offset lists
    std::vector<u64> list_start_;  // a_off_.size()+1 boundaries into list_off_
};

}  // namespace csax
