#pragma once

#include <optional>
#include <vector>

#include "csax/bitvec.hpp"
#include "csax/common.hpp"
#include "csax/serialize.hpp"
#include "csax/suffix.hpp"

namespace csax {

// Suffix tree shape as balanced parentheses, leaves in suffix array order.
// Node handles are opening-parenthesis positions. Navigation directories
// (matching parens, parents, excess block minima for LCA) are rebuilt from
// the parenthesis bits, never serialized.
class SuffixTreeTopo {
public:
    using Node = size_t;
    static constexpr Node npos = static_cast<Node>(-1);

    SuffixTreeTopo() = default;

    static SuffixTreeTopo build(const std::vector<Symbol>& t, const std::vector<u32>& sa);

    Node root() const { return 0; }
    size_t num_nodes() const { return bp_.ones(); }
    size_t num_leaves_total() const { return leaf_.ones(); }
    size_t bp_length() const { return bp_.size(); }

    bool is_leaf(Node v) const { return leaf_.get(check(v)); }
    size_t preorder(Node v) const { return bp_.rank1(static_cast<i64>(check(v))) - 1; }
    Node node_at_preorder(size_t p) const { return bp_.select1(p + 1); }

    Node parent(Node v) const;  // npos for the root
    size_t child_count(Node v) const;
    Node child(Node v, size_t j) const;  // j is 0-based
    // 0-based ordinal of direct child u under its parent v
    size_t child_ordinal(Node v, Node u) const;

    size_t num_leaves(Node v) const;
    size_t leftmost_leaf_rank(Node v) const;
    Node leaf(size_t i) const;  // i-th leaf (0-based), in SA order

    Node lca(Node u, Node v) const;
    Node node_from_range(size_t l, size_t r) const { return lca(leaf(l), leaf(r)); }

    void save(Writer& w) const;
    static SuffixTreeTopo load(Reader& r);

private:
    Node check(Node v) const {
        if (v >= bp_.size() || !bp_.get(v)) throw std::out_of_range("invalid node handle");
        return v;
    }
    size_t close_of(Node v) const { return close_[preorder(v)]; }
    void build_directories();
    // rightmost position of minimum excess in bp[l..r]
    size_t rmq_rightmost(size_t l, size_t r) const;
    void scan_block(size_t lo, size_t hi, i64 base_excess, i64& best, size_t& pos) const;

    BitVec bp_;    // '(' = 1
    BitVec leaf_;  // 1 at leaf opening positions

    // directories, rebuilt on load
    std::vector<u32> close_;   // by preorder
    std::vector<u32> parent_;  // by preorder, opening position; root -> 0xFFFFFFFF
    std::vector<i64> blk_excess_;  // excess before each 64-bit block
    std::vector<i64> blk_min_;     // min excess within block
    std::vector<u32> blk_min_pos_; // rightmost in-block offset of that min
    std::vector<std::vector<std::pair<i64, u32>>> sparse_;  // (min, rightmost block) per level
};

}  // namespace csax
