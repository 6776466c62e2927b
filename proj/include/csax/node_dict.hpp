#pragma once

#include <optional>
#include <vector>

#include "csax/bitvec.hpp"
#include "csax/common.hpp"
#include "csax/sequence.hpp"
#include "csax/topology.hpp"

namespace csax {

// Heavy/light/special classification of the suffix tree and the per-node
// dictionaries of heavy-child labels with precomputed rank answers.
//
// A node is heavy if it has at least d leaf descendants, special if at
// least two of its children are heavy. A node carries a dictionary iff it
// is special or has one heavy child plus at least d light children; the
// marker bitvector D indexes dictionaries by rank1 over preorders. Heavy
// nodes without a dictionary keep just the ordinal of their single heavy
// child, indexed by rank0.
//
// Dictionary values are the interval endpoint ranks of the node's sequence
// interval, stored chunk-encoded (chunk handle into A_a plus an in-chunk
// remainder) and decoded against the sequence at lookup time.
class NodeDicts {
public:
    static constexpr u8 kNoHeavyChild = 0xFF;

    NodeDicts() = default;

    // Classification pass: marks D, sizes the dictionaries (one slot per
    // heavy child of each marked node), and records heavy-child ordinals.
    // Dictionaries start empty; the index builder fills them.
    static NodeDicts prepare(const SuffixTreeTopo& topo, u32 d);

    u32 d() const { return d_; }
    size_t num_nodes() const { return D_.size(); }
    size_t num_marked() const { return D_.ones(); }
    const BitVec& marker() const { return D_; }
    bool is_marked(size_t preorder) const { return D_.get(preorder); }

    struct LookupResult {
        u32 child;       // ordinal among all children of the node
        size_t rank_lo;  // rank of the key just before the node's interval
        size_t rank_hi;  // rank of the key at the interval's right end
    };

    // Entry for symbol a at a marked node, ranks decoded through seq's
    // chunk directory, or absent if a labels no heavy child.
    std::optional<LookupResult> lookup(const SequenceIndex& seq, size_t preorder, Symbol a,
                                       QueryStats* qs = nullptr) const;

    // Ordinal of the single heavy child of an unmarked node, absent if the
    // node has none.
    std::optional<u32> heavy_child_of(size_t preorder) const;

    // --- builder-side filling ---
    struct Entry {
        Symbol key;
        u32 child;
        u32 lo_chunk, lo_rem;
        u32 hi_chunk, hi_rem;
    };
    size_t slot_count(size_t preorder) const;  // heavy-child capacity of a marked node
    // entries must be sorted by key and fill every slot; refilling throws
    void fill_dict(size_t preorder, const std::vector<Entry>& entries);
    bool fully_populated() const;

    size_t total_entries() const { return keys_.size(); }
    u64 storage_bits() const;

    void save(Writer& w) const;
    static NodeDicts load(Reader& r);

private:
    size_t dict_index(size_t preorder) const;  // rank1(D, preorder) - 1, marked only

    u32 d_ = 2;
    BitVec D_;
    std::vector<u64> dict_start_;  // num_marked+1 offsets into the entry arrays
    std::vector<u16> keys_;
    std::vector<u16> child_;
    std::vector<u32> lo_chunk_, hi_chunk_;
    std::vector<u16> lo_rem_, hi_rem_;
    std::vector<u8> heavy_idx_;  // per unmarked node, kNoHeavyChild if none
    std::vector<u8> filled_;     // builder bookkeeping, not serialized
};

}  // namespace csax
