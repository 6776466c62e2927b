#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "csax/builder.hpp"
#include "csax/common.hpp"
#include "csax/fm_index.hpp"
#include "csax/node_dict.hpp"
#include "csax/topology.hpp"

namespace csax {

struct SearchResult {
    size_t l = 0, r = 0;  // interval in the reverse BWT
    QueryStats stats;
};

struct IndexStats {
    u64 n = 0;
    u32 sigma = 0, d = 0, b = 0;
    u64 alphabet_bytes = 0, fm_bytes = 0, topo_bytes = 0, dict_bytes = 0;
    u64 payload_bits = 0;    // reverse-BWT wavelet levels + directories
    u64 chunk_dir_bits = 0;  // A_a tables
    u64 prank_bits = 0;      // partial-rank directory
    u64 interval_rank_bits = 0;
    u64 dict_storage_bits = 0;
    double h0 = 0, h1 = 0, h2 = 0, h3 = 0;  // empirical entropies, bits/symbol
};

// The assembled index: FM core over the reverse BWT, suffix tree topology
// of the text, node dictionaries, and the byte alphabet map.
//
// Pattern search walks the tree in sync with backward steps, choosing per
// step between dictionary answers, small interval rank queries, edge
// arithmetic, and (at most once per query) a general backward step.
class SelfIndex {
public:
    SelfIndex() = default;

    // sample_rate 0 selects the default. Throws std::invalid_argument if
    // bytes contain 0x00, which is reserved for the sentinel.
    static SelfIndex build(std::string_view bytes, u32 sample_rate = 0,
                           BuildInstrumentation* instr = nullptr, bool record_visits = false);

    size_t size() const { return fm_.size(); }  // text length incl. sentinel
    u32 sigma() const { return fm_.sigma(); }
    u32 d() const { return d_; }
    u32 sample_rate() const { return fm_.sample_rate(); }
    u64 text_digest() const { return text_digest_; }

    // Interval of the reversed pattern, or absent when the pattern does not
    // occur (or contains unmapped bytes). Empty pattern yields the full
    // interval.
    std::optional<SearchResult> search_interval(std::string_view pattern) const;

    size_t count(std::string_view pattern) const;
    std::vector<u64> locate(std::string_view pattern) const;  // sorted positions
    std::vector<u8> extract(size_t from, size_t len) const;   // sentinel decodes to 0x00

    const FMIndex& fm() const { return fm_; }
    const SuffixTreeTopo& topo() const { return topo_; }
    const NodeDicts& dicts() const { return nd_; }
    const std::vector<u8>& code_to_byte() const { return code_to_byte_; }

    std::vector<u8> serialize() const;
    static SelfIndex deserialize(const std::vector<u8>& buf);  // throws CorruptIndex

    IndexStats stats() const;

private:
    FMIndex fm_;
    SuffixTreeTopo topo_;
    NodeDicts nd_;
    u32 d_ = 2;
    std::array<int, 256> byte_to_code_{};
    std::vector<u8> code_to_byte_;
    u64 text_digest_ = 0;

    std::vector<std::vector<u8>> sections() const;
};

// Empirical k-th order entropy of a byte string, bits per symbol.
double empirical_entropy(const std::vector<u8>& s, u32 k);

}  // namespace csax
