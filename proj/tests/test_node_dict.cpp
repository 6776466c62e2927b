#include <algorithm>
#include <random>
#include <vector>

#include "csax/node_dict.hpp"
#include "csax/sequence.hpp"
#include "csax/serialize.hpp"
#include "csax/suffix.hpp"
#include "csax/text.hpp"
#include "csax/topology.hpp"
#include "doctest.h"
#include "oracle.hpp"
#include "testutil.hpp"

using csax::NodeDicts;
using csax::SequenceIndex;
using csax::SuffixTreeTopo;
using csax::Symbol;
using csax::Text;

namespace {
struct BruteNode {
    size_t l, r;
    size_t heavy = 0, light = 0;
    bool marked = false;
    size_t heavy_ordinal = 0;  // valid when heavy == 1
};

// Child intervals of an internal node, grouped by the character at its
// string depth over the sorted suffixes. Sentinel treated as the smallest.
std::vector<BruteNode> brute_classify(const std::string& t_with_sentinel, csax::u32 d) {
    auto sa = oracle::naive_sa(t_with_sentinel);
    auto nodes = oracle::naive_suffix_tree(t_with_sentinel);
    std::vector<BruteNode> out;
    for (auto& nd : nodes) {
        BruteNode b{nd.l, nd.r, 0, 0, false, 0};
        size_t ordinal = 0;
        size_t i = nd.l;
        while (i <= nd.r) {
            unsigned char c = sa[i] + nd.depth < t_with_sentinel.size()
                                  ? static_cast<unsigned char>(t_with_sentinel[sa[i] + nd.depth])
                                  : 0;
            size_t j = i;
            while (j <= nd.r) {
                unsigned char cj =
                    sa[j] + nd.depth < t_with_sentinel.size()
                        ? static_cast<unsigned char>(t_with_sentinel[sa[j] + nd.depth])
                        : 0;
                if (cj != c) break;
                ++j;
            }
            if (j - i >= d) {
                if (b.heavy == 0) b.heavy_ordinal = ordinal;
                ++b.heavy;
            } else {
                ++b.light;
            }
            ++ordinal;
            i = j;
        }
        b.marked = b.heavy >= 2 || (b.heavy == 1 && b.light >= d);
        out.push_back(b);
    }
    return out;
}
}  // namespace

TEST_CASE("classification matches the brute grouping") {
    std::mt19937 rng(5150);
    for (size_t sigma : {2, 4, 16, 64, 256}) {
        auto alpha = testutil::alphabet(sigma);
        for (int iter = 0; iter < 6; ++iter) {
            std::uniform_int_distribution<size_t> n_d(2, 1200);
            std::string text = testutil::random_text(rng, n_d(rng), alpha);
            Text t = csax::make_text(text);
            auto bundle = csax::build_suffix_array(t);
            SuffixTreeTopo topo = SuffixTreeTopo::build(t.symbols, bundle.sa);
            csax::u32 d = csax::heavy_threshold(t.sigma);
            NodeDicts nd = NodeDicts::prepare(topo, d);
            REQUIRE(nd.num_nodes() == topo.num_nodes());

            auto brute = brute_classify(text + std::string(1, '\0'), d);
            size_t marked_seen = 0;
            for (auto& b : brute) {
                auto v = topo.node_from_range(b.l, b.r);
                size_t p = topo.preorder(v);
                REQUIRE(nd.is_marked(p) == b.marked);
                if (b.marked) {
                    ++marked_seen;
                    REQUIRE(nd.slot_count(p) == b.heavy);
                    CHECK_THROWS_AS(nd.heavy_child_of(p), std::logic_error);
                } else if (b.heavy == 1) {
                    auto h = nd.heavy_child_of(p);
                    REQUIRE(h.has_value());
                    REQUIRE(*h == b.heavy_ordinal);
                } else {
                    REQUIRE(!nd.heavy_child_of(p).has_value());
                }
            }
            REQUIRE(marked_seen == nd.num_marked());
            // leaves are unmarked and have no heavy child
            for (size_t p = 0; p < topo.num_nodes(); ++p) {
                if (!topo.is_leaf(topo.node_at_preorder(p))) continue;
                REQUIRE(!nd.is_marked(p));
                REQUIRE(!nd.heavy_child_of(p).has_value());
            }
        }
    }
}

TEST_CASE("fill and lookup round trip chunk-encoded ranks") {
    std::mt19937 rng(61);
    csax::u32 sigma = 12;
    std::uniform_int_distribution<Symbol> sym_d(0, sigma - 1);
    std::vector<Symbol> s(2500);
    for (auto& x : s) x = sym_d(rng);
    SequenceIndex seq = SequenceIndex::build(s, sigma);

    // a topology with marked nodes to host the dictionaries
    auto alpha = testutil::alphabet(3);
    std::string text = testutil::random_text(rng, 600, alpha);
    Text t = csax::make_text(text);
    auto bundle = csax::build_suffix_array(t);
    SuffixTreeTopo topo = SuffixTreeTopo::build(t.symbols, bundle.sa);
    NodeDicts nd = NodeDicts::prepare(topo, 2);
    REQUIRE(nd.num_marked() > 0);
    CHECK(!nd.fully_populated());

    // synthetic but self-consistent values: each slot stores the true ranks
    // of a random window of seq for a distinct symbol
    struct Want {
        Symbol a;
        csax::u32 child;
        size_t lo, hi;
    };
    std::vector<std::vector<Want>> wants(nd.num_nodes());
    std::uniform_int_distribution<size_t> pos_d(0, s.size() - 1);
    for (size_t p = 0; p < nd.num_nodes(); ++p) {
        if (!nd.is_marked(p)) continue;
        size_t slots = nd.slot_count(p);
        std::vector<NodeDicts::Entry> entries;
        for (size_t k = 0; k < slots; ++k) {
            Symbol a = static_cast<Symbol>((p + 3 * k) % sigma);
            size_t l = pos_d(rng), r = pos_d(rng);
            if (l > r) std::swap(l, r);
            size_t lo = seq.rank(a, static_cast<csax::i64>(l) - 1);
            size_t hi = seq.rank(a, static_cast<csax::i64>(r));
            auto [lc, lrem] = seq.encode_rank(a, static_cast<csax::i64>(l) - 1, lo);
            auto [hc, hrem] = seq.encode_rank(a, static_cast<csax::i64>(r), hi);
            entries.push_back({a, static_cast<csax::u32>(k), lc, lrem, hc, hrem});
            wants[p].push_back({a, static_cast<csax::u32>(k), lo, hi});
        }
        std::sort(entries.begin(), entries.end(),
                  [](const auto& x, const auto& y) { return x.key < y.key; });
        nd.fill_dict(p, entries);
        CHECK_THROWS_AS(nd.fill_dict(p, entries), std::logic_error);  // refill rejected
    }
    REQUIRE(nd.fully_populated());

    csax::QueryStats st;
    size_t lookups = 0;
    for (size_t p = 0; p < nd.num_nodes(); ++p) {
        for (auto& w : wants[p]) {
            auto res = nd.lookup(seq, p, w.a, &st);
            ++lookups;
            REQUIRE(res.has_value());
            CHECK(res->child == w.child);
            CHECK(res->rank_lo == w.lo);
            CHECK(res->rank_hi == w.hi);
        }
        if (nd.is_marked(p)) {
            // a symbol outside the stored key set misses
            std::vector<bool> present(sigma, false);
            for (auto& w : wants[p]) present[w.a] = true;
            for (Symbol a = 0; a < sigma; ++a) {
                if (present[a]) continue;
                REQUIRE(!nd.lookup(seq, p, a, &st).has_value());
                ++lookups;
                break;
            }
        }
    }
    CHECK(st.dict_lookups == lookups);
    CHECK(st.general_rank == 0);

    // serialization preserves every answer
    csax::Writer w;
    nd.save(w);
    std::vector<csax::u8> buf = w.take();
    csax::Reader r(buf);
    NodeDicts nd2 = NodeDicts::load(r);
    REQUIRE(nd2.fully_populated());
    REQUIRE(nd2.num_marked() == nd.num_marked());
    REQUIRE(nd2.total_entries() == nd.total_entries());
    for (size_t p = 0; p < nd.num_nodes(); ++p) {
        for (auto& want : wants[p]) {
            auto res = nd2.lookup(seq, p, want.a);
            REQUIRE(res.has_value());
            CHECK(res->child == want.child);
            CHECK(res->rank_lo == want.lo);
            CHECK(res->rank_hi == want.hi);
        }
        if (!nd.is_marked(p)) REQUIRE(nd2.heavy_child_of(p) == nd.heavy_child_of(p));
    }
}

TEST_CASE("fill contract violations throw") {
    std::string text = "abracadabra";
    Text t = csax::make_text(text);
    auto bundle = csax::build_suffix_array(t);
    SuffixTreeTopo topo = SuffixTreeTopo::build(t.symbols, bundle.sa);
    NodeDicts nd = NodeDicts::prepare(topo, 2);

    size_t p = 0;
    while (p < nd.num_nodes() && !nd.is_marked(p)) ++p;
    REQUIRE(p < nd.num_nodes());
    size_t slots = nd.slot_count(p);
    std::vector<NodeDicts::Entry> bad(slots + 1, NodeDicts::Entry{1, 0, 0, 0, 0, 0});
    CHECK_THROWS_AS(nd.fill_dict(p, bad), std::logic_error);  // wrong slot count
    if (slots >= 2) {
        std::vector<NodeDicts::Entry> unsorted(slots, NodeDicts::Entry{2, 0, 0, 0, 0, 0});
        unsorted.back().key = 1;
        CHECK_THROWS_AS(nd.fill_dict(p, unsorted), std::logic_error);
    }
    size_t q = 0;
    while (q < nd.num_nodes() && nd.is_marked(q)) ++q;
    REQUIRE(q < nd.num_nodes());
    CHECK_THROWS_AS(nd.slot_count(q), std::logic_error);  // unmarked nodes have no dict
}
