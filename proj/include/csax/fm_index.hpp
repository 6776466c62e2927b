#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "csax/bitvec.hpp"
#include "csax/common.hpp"
#include "csax/interval_rank.hpp"
#include "csax/sequence.hpp"
#include "csax/text.hpp"

namespace csax {

// SA samples over the reversed text: position r is marked iff SA[r] mod b = 0
// or SA[r] = n-1, so every LF walk reaches a sample in fewer than b steps.
// inv_samples holds inverse-SA values at text positions that are multiples
// of b, for extraction.
struct SampledSA {
    u32 b = 1;
    BitVec marked;
    std::vector<u64> values;
    std::vector<u64> inv_samples;
};

// FM-index core over the BWT of the reversed text: Acc array, backward
// steps, LF, locate, extract.
class FMIndex {
public:
    FMIndex() = default;

    // Convenience build: runs the suffix machinery over reverse_text(t).
    static FMIndex build(const Text& t, u32 b);

    // Assembly from already-computed parts (used by the index builder).
    // sa_rev is the suffix array of the reversed text; consumed for samples.
    static FMIndex assemble(SequenceIndex bwt_rev_seq, const std::vector<u32>& sa_rev, u32 b);

    size_t size() const { return n_; }
    u32 sigma() const { return bwt_rev_.sigma(); }
    u32 sample_rate() const { return samples_.b; }

    const SequenceIndex& bwt_rev() const { return bwt_rev_; }
    const IntervalRankIndex& interval_rank() const { return irx_; }
    const std::vector<u64>& acc() const { return acc_; }
    const SampledSA& samples() const { return samples_; }

    // Interval of a.X in the reversed-text BWT given the interval [l..r] of
    // X, or absent. Performs two general rank queries.
    std::optional<std::pair<size_t, size_t>> backward_step(Symbol a, size_t l, size_t r,
                                                           QueryStats* qs = nullptr) const;

    // Same interval from precomputed rank answers; no rank query at all.
    std::pair<size_t, size_t> backward_step_with_ranks(Symbol a, size_t rank_lo,
                                                       size_t rank_hi) const;

    // LF mapping; access + partial rank only.
    size_t lf(size_t j, QueryStats* qs = nullptr) const;

    // Text positions (in T) for the occurrences in the reversed-BWT interval
    // [l..r] of a pattern of length plen. Unsorted.
    std::vector<u64> locate(size_t l, size_t r, size_t plen, QueryStats* qs = nullptr) const;

    // T[i..i+len-1], reconstructed by LF-walking from the nearest sample.
    std::vector<Symbol> extract(size_t i, size_t len, QueryStats* qs = nullptr) const;

    void save(Writer& w) const;
    static FMIndex load(Reader& r);

private:
    size_t n_ = 0;
    SequenceIndex bwt_rev_;
    IntervalRankIndex irx_;
    std::vector<u64> acc_;  // sigma+1 entries, acc_[a] = count of symbols < a
    SampledSA samples_;
};

}  // namespace csax
