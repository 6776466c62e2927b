#pragma once

#include <cstdint>
#include <cstddef>
#include <stdexcept>

namespace csax {

using u8 = std::uint8_t;
using u16 = std::uint16_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

using Symbol = u32;

// Heaviness threshold d: a suffix tree node is heavy if it has at least d
// leaf descendants. Clamped to 2 so binary alphabets still split.
inline u32 heavy_threshold(u32 sigma) {
    u32 d = 2;
    while ((u64{1} << d) < sigma) ++d;  // d = ceil(log2 sigma), min 2
    return d;
}

// Group size for the small-interval-rank structure and the partial-rank
// directory: g = max(d^2, 4).
inline u32 group_size(u32 sigma) {
    u32 d = heavy_threshold(sigma);
    u32 g = d * d;
    return g < 4 ? 4 : g;
}

// Per-query instrumentation. general_rank counts invocations of the general
// rank operation on a sequence; the search contract bounds it by 2 per query.
struct QueryStats {
    u64 general_rank = 0;
    u64 interval_rank = 0;
    u64 partial_rank = 0;
    u64 dict_lookups = 0;

    void reset() { *this = QueryStats{}; }
};

}  // namespace csax
