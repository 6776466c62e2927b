#pragma once

#include <vector>

#include "csax/common.hpp"
#include "csax/text.hpp"

namespace csax {

struct SuffixArrayBundle {
    std::vector<u32> sa;      // permutation of [0..n-1]
    std::vector<Symbol> bwt;  // bwt[i] = T[(sa[i]-1) mod n]
};

// Induced-sorting suffix array construction (SA-IS family); worst-case
// linear, deterministic, no comparison sort.
std::vector<u32> build_suffix_array_raw(const std::vector<Symbol>& t, u32 sigma);

SuffixArrayBundle build_suffix_array(const Text& t);

// Kasai's algorithm; lcp[i] = lcp of suffixes sa[i-1] and sa[i], lcp[0] = 0.
std::vector<u32> build_lcp(const std::vector<Symbol>& t, const std::vector<u32>& sa);

std::vector<u32> invert_permutation(const std::vector<u32>& sa);

}  // namespace csax
