#include "csax/topology.hpp"

#include <algorithm>
#include <bit>

namespace csax {

namespace {
constexpr u32 kNoParent = 0xFFFFFFFFu;

struct TmpNode {
    u32 depth;
    std::vector<i64> children;  // >=0: temp node id, <0: leaf ~(leaf index)
};
}  // namespace

SuffixTreeTopo SuffixTreeTopo::build(const std::vector<Symbol>& t, const std::vector<u32>& sa) {
    size_t n = t.size();
    SuffixTreeTopo topo;
    if (n == 1) {  // degenerate text: the root is the single leaf
        topo.bp_ = BitVec::from_bools({true, false});
        topo.leaf_ = BitVec::from_bools({true, false});
        topo.build_directories();
        return topo;
    }
    std::vector<u32> lcp = build_lcp(t, sa);

    // LCP-interval stack construction of the tree shape
    std::vector<TmpNode> nodes;
    nodes.push_back({0, {}});
    std::vector<size_t> stack{0};
    auto attach = [&](size_t parent, i64 child) { nodes[parent].children.push_back(child); };
    nodes[0].children.push_back(~i64{0});  // leaf 0
    for (size_t i = 1; i < n; ++i) {
        u32 l = lcp[i];
        while (nodes[stack.back()].depth > l) {
            size_t v = stack.back();
            stack.pop_back();
            if (nodes[stack.back()].depth >= l) {
                attach(stack.back(), static_cast<i64>(v));
            } else {
                nodes.push_back({l, {static_cast<i64>(v)}});
                stack.push_back(nodes.size() - 1);
                break;
            }
        }
        if (nodes[stack.back()].depth < l) {
            // new node steals the previous subtree from the current top
            size_t top = stack.back();
            i64 stolen = nodes[top].children.back();
            nodes[top].children.pop_back();
            nodes.push_back({l, {stolen}});
            stack.push_back(nodes.size() - 1);
        }
        attach(stack.back(), ~static_cast<i64>(i));
    }
    while (stack.size() > 1) {
        size_t v = stack.back();
        stack.pop_back();
        attach(stack.back(), static_cast<i64>(v));
    }

    // emit balanced parentheses by iterative DFS
    BitVecBuilder bp, leaf;
    struct Frame {
        size_t node;
        size_t next_child;
    };
    std::vector<Frame> dfs{{0, 0}};
    bp.push_back(true);
    leaf.push_back(false);
    while (!dfs.empty()) {
        Frame& f = dfs.back();
        if (f.next_child == nodes[f.node].children.size()) {
            bp.push_back(false);
            leaf.push_back(false);
            dfs.pop_back();
            continue;
        }
        i64 c = nodes[f.node].children[f.next_child++];
        if (c < 0) {  // leaf
            bp.push_back(true);
            leaf.push_back(true);
            bp.push_back(false);
            leaf.push_back(false);
        } else {
            bp.push_back(true);
            leaf.push_back(false);
            dfs.push_back({static_cast<size_t>(c), 0});
        }
    }
    topo.bp_ = bp.take();
    topo.leaf_ = leaf.take();
    topo.build_directories();
    return topo;
}

void SuffixTreeTopo::build_directories() {
    size_t len = bp_.size();
    size_t nn = bp_.ones();
    close_.assign(nn, 0);
    parent_.assign(nn, kNoParent);
    std::vector<u32> open_stack;
    size_t pre = 0;
    for (size_t i = 0; i < len; ++i) {
        if (bp_.get(i)) {
            if (!open_stack.empty()) parent_[pre] = open_stack.back();
            open_stack.push_back(static_cast<u32>(i));
            ++pre;
        } else {
            u32 v = open_stack.back();
            open_stack.pop_back();
            close_[bp_.rank1(v) - 1] = static_cast<u32>(i);
        }
    }
    if (!open_stack.empty()) throw std::logic_error("unbalanced parentheses");

    // excess block directory for LCA range minima
    size_t nblk = (len + 63) / 64;
    blk_excess_.assign(nblk, 0);
    blk_min_.assign(nblk, 0);
    blk_min_pos_.assign(nblk, 0);
    i64 e = 0;
    for (size_t b = 0; b < nblk; ++b) {
        blk_excess_[b] = e;
        i64 best = INT64_MAX;
        u32 bestpos = 0;
        size_t hi = std::min(len, (b + 1) * 64);
        for (size_t i = b * 64; i < hi; ++i) {
            e += bp_.get(i) ? 1 : -1;
            if (e <= best) {
                best = e;
                bestpos = static_cast<u32>(i - b * 64);
            }
        }
        blk_min_[b] = best;
        blk_min_pos_[b] = bestpos;
    }
    // sparse table over blocks, ties resolved to the right
    sparse_.clear();
    std::vector<std::pair<i64, u32>> level(nblk);
    for (size_t b = 0; b < nblk; ++b) level[b] = {blk_min_[b], static_cast<u32>(b)};
    sparse_.push_back(level);
    for (size_t span = 2; span <= nblk; span *= 2) {
        const auto& prev = sparse_.back();
        std::vector<std::pair<i64, u32>> cur(nblk - span + 1);
        for (size_t b = 0; b + span <= nblk; ++b) {
            const auto& a = prev[b];
            const auto& c = prev[b + span / 2];
            cur[b] = c.first <= a.first ? c : a;
        }
        sparse_.push_back(std::move(cur));
    }
}

void SuffixTreeTopo::scan_block(size_t lo, size_t hi, i64 base_excess, i64& best,
                                size_t& pos) const {
    i64 e = base_excess;
    for (size_t i = lo; i <= hi; ++i) {
        e += bp_.get(i) ? 1 : -1;
        if (e <= best) {
            best = e;
            pos = i;
        }
    }
}

size_t SuffixTreeTopo::rmq_rightmost(size_t l, size_t r) const {
    // excess at position p means excess after bp[0..p]
    size_t bl = l / 64, br = r / 64;
    i64 best = INT64_MAX;
    size_t pos = l;
    auto excess_before = [&](size_t i) {
        // excess after bp[0..i-1], i within block
        size_t b = i / 64;
        i64 e = blk_excess_[b];
        for (size_t k = b * 64; k < i; ++k) e += bp_.get(k) ? 1 : -1;
        return e;
    };
    if (bl == br) {
        scan_block(l, r, excess_before(l), best, pos);
        return pos;
    }
    scan_block(l, (bl + 1) * 64 - 1, excess_before(l), best, pos);
    if (bl + 1 <= br - 1) {
        size_t lo = bl + 1, cnt = br - 1 - lo + 1;
        size_t k = std::bit_width(cnt) - 1;
        const auto& a = sparse_[k][lo];
        const auto& c = sparse_[k][br - 1 - (size_t{1} << k) + 1];
        auto m = c.first <= a.first ? c : a;
        if (m.first <= best) {
            best = m.first;
            pos = m.second * 64 + blk_min_pos_[m.second];
        }
    }
    scan_block(br * 64, r, blk_excess_[br], best, pos);
    return pos;
}

SuffixTreeTopo::Node SuffixTreeTopo::parent(Node v) const {
    u32 p = parent_[preorder(v)];
    return p == kNoParent ? npos : p;
}

size_t SuffixTreeTopo::child_count(Node v) const {
    check(v);
    size_t count = 0;
    size_t c = v + 1;
    while (c < bp_.size() && bp_.get(c)) {
        ++count;
        c = close_of(c) + 1;
    }
    return count;
}

SuffixTreeTopo::Node SuffixTreeTopo::child(Node v, size_t j) const {
    check(v);
    size_t c = v + 1;
    while (c < bp_.size() && bp_.get(c)) {
        if (j == 0) return c;
        --j;
        c = close_of(c) + 1;
    }
    throw std::out_of_range("child ordinal out of range");
}

size_t SuffixTreeTopo::child_ordinal(Node v, Node u) const {
    check(v);
    size_t j = 0;
    size_t c = v + 1;
    while (c < bp_.size() && bp_.get(c)) {
        if (c == u) return j;
        ++j;
        c = close_of(c) + 1;
    }
    throw std::out_of_range("node is not a child");
}

size_t SuffixTreeTopo::num_leaves(Node v) const {
    check(v);
    return leaf_.rank1(static_cast<i64>(close_of(v))) -
           leaf_.rank1(static_cast<i64>(v) - 1);
}

size_t SuffixTreeTopo::leftmost_leaf_rank(Node v) const {
    check(v);
    return leaf_.rank1(static_cast<i64>(v) - 1);
}

SuffixTreeTopo::Node SuffixTreeTopo::leaf(size_t i) const {
    if (i >= leaf_.ones()) throw std::out_of_range("leaf rank out of range");
    return leaf_.select1(i + 1);
}

SuffixTreeTopo::Node SuffixTreeTopo::lca(Node u, Node v) const {
    check(u);
    check(v);
    if (u == v) return u;
    if (u > v) std::swap(u, v);
    if (close_of(u) > v) return u;  // u is an ancestor of v
    size_t m = rmq_rightmost(u, v);
    // bp[m+1] opens the child of the lca whose subtree contains v
    u32 p = parent_[preorder(m + 1)];
    return p;
}

void SuffixTreeTopo::save(Writer& w) const {
    w.put_u64(bp_.size());
    w.put_vec(bp_.words());
    w.put_u64(leaf_.size());
    w.put_vec(leaf_.words());
}

SuffixTreeTopo SuffixTreeTopo::load(Reader& r) {
    SuffixTreeTopo topo;
    u64 nb = r.get_u64();
    topo.bp_ = BitVec::from_words(nb, r.get_vec<u64>());
    u64 nl = r.get_u64();
    topo.leaf_ = BitVec::from_words(nl, r.get_vec<u64>());
    if (topo.bp_.size() != topo.leaf_.size() || topo.bp_.size() % 2 ||
        topo.bp_.ones() * 2 != topo.bp_.size())
        throw CorruptIndex("bad topology bits");
    try {
        topo.build_directories();
    } catch (const std::logic_error&) {
        throw CorruptIndex("unbalanced topology");
    }
    return topo;
}

}  // namespace csax
