#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "csax/bitvec.hpp"
#include "csax/common.hpp"
#include "csax/serialize.hpp"

namespace csax {

// Sequence index over [0..sigma-1] answering access / rank / select /
// partial_rank / distinct_symbols.
//
// The payload is a wavelet matrix (one bitvector per bit of the symbol
// width). On top of it:
//   - chunk_dir: per-symbol bitvectors A_a = 0 1^{d_0} 0 1^{d_1} ... encoding
//     the count d_k of symbol a in each chunk of sigma consecutive positions.
//     rank answers decompose as select0(k+1, A_a) - k plus an in-chunk count,
//     and the node dictionaries store rank values as (chunk, remainder).
//   - prank_dir: a per-position within-group occurrence ordinal plus
//     per-(group, distinct symbol) absolute base ranks, so partial_rank never
//     touches the payload's rank path. Group length is group_size(sigma).
class SequenceIndex {
public:
    SequenceIndex() = default;

    static SequenceIndex build(const std::vector<Symbol>& s, u32 sigma);

    size_t size() const { return m_; }
    u32 sigma() const { return sigma_; }
    u32 group_len() const { return group_len_; }

    Symbol access(size_t i) const;

    // Occurrences of a in S[0..i]; i = -1 yields 0. Counts as a general rank
    // query on the instrumentation.
    size_t rank(Symbol a, i64 i, QueryStats* qs = nullptr) const;

    // Position of the k-th occurrence of a, 1 <= k <= rank(a, m-1).
    size_t select(Symbol a, size_t k) const;

    // rank(access(i), i) from the dedicated directory; never a general rank.
    size_t partial_rank(size_t i, QueryStats* qs = nullptr) const;

    // Multiset histogram of S[l..r], in increasing symbol order.
    std::vector<std::pair<Symbol, size_t>> distinct_symbols(size_t l, size_t r) const;

    size_t symbol_count(Symbol a) const;  // rank(a, m-1) without instrumentation

    // --- chunk scheme (A_a) ---
    size_t chunk_of(size_t i) const { return i / sigma_; }
    // occurrences of a in chunks 0..k-1, via select0 on A_a
    size_t chunk_rank_base(Symbol a, size_t chunk) const;
    // (chunk, remainder) encoding of a rank value at sequence position i;
    // i = -1 encodes rank 0 as (0, 0)
    std::pair<u32, u32> encode_rank(Symbol a, i64 i, size_t rank_value) const;
    size_t decode_rank(Symbol a, u32 chunk, u32 remainder) const;

    // --- partial-rank group tables, shared with the interval-rank module ---
    // Absolute rank of a immediately before group gi, if a occurs in group gi.
    std::optional<size_t> group_base(size_t gi, Symbol a) const;

    // --- space accounting, for the stats report ---
    u64 payload_bits() const;    // wavelet levels plus their directories
    u64 chunk_dir_bits() const;  // A_a bitvectors plus directories
    u64 prank_dir_bits() const;  // partial-rank ordinals and group tables

    void save(Writer& w) const;
    static SequenceIndex load(Reader& r);

private:
    size_t wm_count_range(Symbol a, size_t lo, size_t hi) const;  // count in S[lo..hi]
    size_t rank_internal(Symbol a, i64 i) const;
    void build_payload(const std::vector<Symbol>& s);
    void build_chunk_dir(const std::vector<Symbol>& s);
    void build_prank_dir(const std::vector<Symbol>& s);

    size_t m_ = 0;
    u32 sigma_ = 0;
    u32 nlevels_ = 0;
    u32 group_len_ = 0;

    std::vector<BitVec> levels_;
    std::vector<u64> zeros_;  // zeros per level

    std::vector<BitVec> chunk_dir_;  // one A_a per symbol

    std::vector<u8> prank_ordinal_;   // per position, 1-based ordinal within group
    std::vector<u16> group_sym_;      // flattened per-group distinct symbols, sorted
    std::vector<u64> group_base_;     // parallel to group_sym_
    std::vector<u64> group_start_;    // ngroups+1 offsets into the two above
};

}  // namespace csax
