#include "csax/builder.hpp"

#include <algorithm>

#include "csax/sequence.hpp"
#include "csax/suffix.hpp"

namespace csax {

u32 default_sample_rate(size_t n) {
    u32 b = 1;
    while ((u64{1} << b) < n) ++b;  // ceil(log2 n), min 1
    return b;
}

namespace {

struct Frame {
    SuffixTreeTopo::Node u;  // node in the text's suffix tree
    size_t lb, rb;           // interval in the forward BWT
    size_t lr, rr;           // interval in the reverse BWT
};

// Traversal state shared across frames.
struct Traversal {
    const Text& t;
    const SequenceIndex& seq_b;  // forward BWT
    const SequenceIndex& seq_r;  // reverse BWT
    const SuffixTreeTopo& topo;  // of T
    const SuffixTreeTopo& topo_r;
    NodeDicts& nd;
    const std::vector<u64>& acc;
    u32 d;
    BuildInstrumentation& instr;
    bool record_visits;

    enum : u8 { kNotSeen = 0, kSeen = 1, kSeenTwice = 2 };
    std::vector<u8> v_state;       // tri-state per symbol, reset lazily
    std::vector<Symbol> touched_;  // symbols to reset after the node

    std::vector<Frame> process_node(const Frame& f);
};

std::vector<Frame> Traversal::process_node(const Frame& f) {
    ++instr.visited_nodes;
    size_t p = topo.preorder(f.u);
    if (record_visits) instr.visited_preorders.push_back(static_cast<u32>(p));
    std::vector<Frame> out;
    if (topo.is_leaf(f.u)) return out;

    size_t width = f.rb - f.lb + 1;
    if (width != topo.num_leaves(f.u) || f.lb != topo.leftmost_leaf_rank(f.u) ||
        f.rb - f.lb != f.rr - f.lr)
        throw std::logic_error("traversal frame intervals inconsistent");

    // Child labels of u and their subtree sizes, read off the reverse BWT.
    auto labels = seq_r.distinct_symbols(f.lr, f.rr);

    // Match heavy labels against the heavy children of u in order; child
    // order in the tree is label order, so sorted labels line up.
    std::vector<std::pair<Symbol, size_t>> heavy_labels;
    for (auto& [a, freq] : labels)
        if (freq >= d) heavy_labels.push_back({a, freq});
    size_t nc = topo.child_count(f.u);
    std::vector<u32> heavy_ord;
    for (size_t j = 0; j < nc; ++j) {
        size_t leaves = topo.num_leaves(topo.child(f.u, j));
        if (leaves >= d) {
            if (heavy_ord.size() == heavy_labels.size() ||
                leaves != heavy_labels[heavy_ord.size()].second)
                throw std::logic_error("heavy child sizes disagree with label frequencies");
            heavy_ord.push_back(static_cast<u32>(j));
        }
    }
    if (heavy_ord.size() != heavy_labels.size())
        throw std::logic_error("heavy child count disagrees with label count");

    if (nd.is_marked(p)) {
        std::vector<NodeDicts::Entry> entries;
        entries.reserve(heavy_labels.size());
        for (size_t k = 0; k < heavy_labels.size(); ++k) {
            auto [a, freq] = heavy_labels[k];
            size_t hi = seq_r.rank(a, static_cast<i64>(f.rr));
            size_t lo = hi - freq;  // rank just before the interval
            NodeDicts::Entry e;
            e.key = a;
            e.child = heavy_ord[k];
            auto lop = seq_r.encode_rank(a, static_cast<i64>(f.lr) - 1, lo);
            auto hip = seq_r.encode_rank(a, static_cast<i64>(f.rr), hi);
            e.lo_chunk = lop.first;
            e.lo_rem = lop.second;
            e.hi_chunk = hip.first;
            e.hi_rem = hip.second;
            entries.push_back(e);
        }
        nd.fill_dict(p, entries);
    }

    // Symbols with an explicit Weiner link from u: those preceding at least
    // two distinct child subtrees of u, found with the tri-state marks.
    touched_.clear();
    size_t cl = f.lb;
    for (size_t j = 0; j < nc; ++j) {
        size_t cr = cl + topo.num_leaves(topo.child(f.u, j)) - 1;
        for (auto& [a, freq] : seq_b.distinct_symbols(cl, cr)) {
            (void)freq;
            ++instr.v_marks;
            if (v_state[a] == kNotSeen) {
                v_state[a] = kSeen;
                touched_.push_back(a);
            } else if (v_state[a] == kSeen) {
                v_state[a] = kSeenTwice;
            }
        }
        cl = cr + 1;
    }

    // Weiner-link targets: symbols preceding X_u, heavy ones matched with
    // the successive heavy children of the reverse-tree locus.
    auto prec = seq_b.distinct_symbols(f.lb, f.rb);
    auto push_target = [&](Symbol a, size_t lr2, size_t rr2) {
        size_t x = acc[a] + seq_b.rank(a, static_cast<i64>(f.lb) - 1);
        size_t y = acc[a] + seq_b.rank(a, static_cast<i64>(f.rb)) - 1;
        if (y - x != rr2 - lr2) throw std::logic_error("Weiner target interval width mismatch");
        out.push_back({topo.node_from_range(x, y), x, y, lr2, rr2});
    };
    if (prec.size() == 1) {
        // locus in the reverse tree lies on an edge: at most one link, and
        // the reverse interval carries over unchanged
        auto [a, freq] = prec[0];
        if (freq >= d && v_state[a] == kSeenTwice) push_target(a, f.lr, f.rr);
    } else {
        auto ubar = topo_r.node_from_range(f.lr, f.rr);
        if (topo_r.child_count(ubar) != prec.size())
            throw std::logic_error("reverse-tree child count disagrees with symbol count");
        size_t lr2 = f.lr;
        for (size_t j = 0; j < prec.size(); ++j) {
            size_t leaves = topo_r.num_leaves(topo_r.child(ubar, j));
            auto [a, freq] = prec[j];
            if (leaves != freq)
                throw std::logic_error("reverse-tree child size disagrees with frequency");
            if (freq >= d && v_state[a] == kSeenTwice) push_target(a, lr2, lr2 + freq - 1);
            lr2 += freq;
        }
    }

    for (Symbol a : touched_) v_state[a] = kNotSeen;
    return out;
}

}  // namespace

BuildResult build_self_index_parts(const Text& t, u32 sample_rate, bool record_visits) {
    Text rev = reverse_text(t);
    SuffixArrayBundle bund_t = build_suffix_array(t);
    SuffixArrayBundle bund_r = build_suffix_array(rev);
    SequenceIndex seq_b = SequenceIndex::build(bund_t.bwt, t.sigma);
    SequenceIndex seq_r = SequenceIndex::build(bund_r.bwt, rev.sigma);
    SuffixTreeTopo topo = SuffixTreeTopo::build(t.symbols, bund_t.sa);
    SuffixTreeTopo topo_r = SuffixTreeTopo::build(rev.symbols, bund_r.sa);

    BuildResult res;
    res.d = heavy_threshold(t.sigma);
    res.nd = NodeDicts::prepare(topo, res.d);

    std::vector<u64> acc(t.sigma + 1, 0);
    for (u32 a = 0; a < t.sigma; ++a) acc[a + 1] = acc[a] + seq_b.symbol_count(a);

    Traversal tr{t,    seq_b, seq_r, topo, topo_r,       res.nd,
                 acc,  res.d, res.instr, record_visits, {},   {}};
    tr.v_state.assign(t.sigma, Traversal::kNotSeen);

    size_t n = t.size();
    // depth-first over the Weiner-link tree; within a level the widest
    // target is kept for last so it is entered tail-style
    std::vector<std::vector<Frame>> pending;
    Frame cur{topo.root(), 0, n - 1, 0, n - 1};
    for (;;) {
        res.instr.max_stack_depth = std::max(res.instr.max_stack_depth, pending.size() + 1);
        std::vector<Frame> kids = tr.process_node(cur);
        if (!kids.empty()) {
            size_t best = 0;
            for (size_t k = 1; k < kids.size(); ++k)
                if (kids[k].rb - kids[k].lb > kids[best].rb - kids[best].lb) best = k;
            std::swap(kids[0], kids[best]);  // widest popped last
            cur = kids.back();
            kids.pop_back();
            if (!kids.empty()) pending.push_back(std::move(kids));
            continue;
        }
        if (pending.empty()) break;
        cur = pending.back().back();
        pending.back().pop_back();
        if (pending.back().empty()) pending.pop_back();
    }

    if (!res.nd.fully_populated())
        throw std::logic_error("traversal left a dictionary unfilled");

    if (sample_rate == 0) sample_rate = default_sample_rate(n);
    res.fm = FMIndex::assemble(std::move(seq_r), bund_r.sa, sample_rate);
    res.topo = std::move(topo);
    return res;
}

}  // namespace csax
