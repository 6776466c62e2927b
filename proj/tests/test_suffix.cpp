#include <algorithm>
#include <random>
#include <set>

#include "csax/serialize.hpp"
#include "csax/suffix.hpp"
#include "csax/text.hpp"
#include "csax/topology.hpp"
#include "doctest.h"
#include "oracle.hpp"
#include "testutil.hpp"

using csax::SuffixTreeTopo;
using csax::Text;

namespace {
std::string with_sentinel(const std::string& s) { return s + std::string(1, '\0'); }

// leaf intervals of all internal nodes, collected by preorder walk
std::set<std::pair<size_t, size_t>> internal_intervals(const SuffixTreeTopo& topo) {
    std::set<std::pair<size_t, size_t>> out;
    for (size_t p = 0; p < topo.num_nodes(); ++p) {
        auto v = topo.node_at_preorder(p);
        if (topo.is_leaf(v)) continue;
        size_t l = topo.leftmost_leaf_rank(v);
        out.insert({l, l + topo.num_leaves(v) - 1});
    }
    return out;
}
}  // namespace

TEST_CASE("banana suffix array and bwt") {
    Text t = csax::make_text("banana");
    auto bundle = csax::build_suffix_array(t);
    std::vector<csax::u32> expect_sa = {6, 5, 3, 1, 0, 4, 2};
    REQUIRE(bundle.sa == expect_sa);
    // bwt "annb$aa" under codes $,a,b,n -> 0,1,2,3
    std::vector<csax::Symbol> expect_bwt = {1, 3, 3, 2, 0, 1, 1};
    REQUIRE(bundle.bwt == expect_bwt);
}

TEST_CASE("single sentinel text") {
    Text t = csax::make_text("");
    auto bundle = csax::build_suffix_array(t);
    REQUIRE(bundle.sa == std::vector<csax::u32>{0});
    REQUIRE(bundle.bwt == std::vector<csax::Symbol>{0});
    SuffixTreeTopo topo = SuffixTreeTopo::build(t.symbols, bundle.sa);
    CHECK(topo.num_leaves_total() == 1);
    CHECK(topo.is_leaf(topo.root()));
}

TEST_CASE("reverse text convention") {
    Text t = csax::make_text("banana");
    Text r = csax::reverse_text(t);
    REQUIRE(csax::decode_bytes(t, r.symbols) ==
            std::vector<csax::u8>{'a', 'n', 'a', 'n', 'a', 'b', 0});
    Text s = csax::make_text("ab");
    REQUIRE(csax::decode_bytes(s, csax::reverse_text(s).symbols) ==
            std::vector<csax::u8>{'b', 'a', 0});
}

TEST_CASE("suffix array matches the sort oracle") {
    std::mt19937 rng(321);
    for (size_t sigma : {2, 4, 16, 64, 256}) {
        auto alpha = testutil::alphabet(sigma);
        for (int iter = 0; iter < 8; ++iter) {
            std::uniform_int_distribution<size_t> n_d(1, 5000);
            std::string text = testutil::random_text(rng, n_d(rng), alpha);
            Text t = csax::make_text(text);
            auto bundle = csax::build_suffix_array(t);
            auto want = oracle::naive_sa(with_sentinel(text));
            REQUIRE(bundle.sa.size() == want.size());
            for (size_t i = 0; i < want.size(); ++i) REQUIRE(bundle.sa[i] == want[i]);
            // BWT identity against the oracle string
            std::string wbwt = oracle::naive_bwt(with_sentinel(text));
            auto got = csax::decode_bytes(t, bundle.bwt);
            for (size_t i = 0; i < wbwt.size(); ++i)
                REQUIRE(got[i] == static_cast<csax::u8>(wbwt[i]));
        }
    }
}

TEST_CASE("unary text yields a path of internal nodes") {
    for (size_t k : {1, 2, 7, 30}) {
        std::string text(k, 'a');
        Text t = csax::make_text(text);
        auto bundle = csax::build_suffix_array(t);
        SuffixTreeTopo topo = SuffixTreeTopo::build(t.symbols, bundle.sa);
        CHECK(topo.num_nodes() - topo.num_leaves_total() == k);  // root + k-1 chain nodes
        auto want = oracle::naive_suffix_tree(with_sentinel(text));
        CHECK(want.size() == k);
    }
}

TEST_CASE("topology matches the compacted-trie oracle") {
    std::mt19937 rng(777);
    for (size_t sigma : {2, 4, 16, 64, 256}) {
        auto alpha = testutil::alphabet(sigma);
        for (int iter = 0; iter < 8; ++iter) {
            std::uniform_int_distribution<size_t> n_d(2, 1500);
            std::string text = testutil::random_text(rng, n_d(rng), alpha);
            Text t = csax::make_text(text);
            auto bundle = csax::build_suffix_array(t);
            SuffixTreeTopo topo = SuffixTreeTopo::build(t.symbols, bundle.sa);
            REQUIRE(topo.num_leaves_total() == t.size());

            auto want = oracle::naive_suffix_tree(with_sentinel(text));
            std::set<std::pair<size_t, size_t>> want_iv;
            for (auto& nd : want) want_iv.insert({nd.l, nd.r});
            REQUIRE(internal_intervals(topo) == want_iv);

            // every oracle node is recoverable from its leaf interval
            for (auto& nd : want) {
                auto v = topo.node_from_range(nd.l, nd.r);
                REQUIRE(topo.leftmost_leaf_rank(v) == nd.l);
                REQUIRE(topo.leftmost_leaf_rank(v) + topo.num_leaves(v) - 1 == nd.r);
            }
        }
    }
}

TEST_CASE("navigation identities") {
    std::mt19937 rng(1001);
    auto alpha = testutil::alphabet(6);
    std::string text = testutil::random_text(rng, 800, alpha);
    Text t = csax::make_text(text);
    auto bundle = csax::build_suffix_array(t);
    SuffixTreeTopo topo = SuffixTreeTopo::build(t.symbols, bundle.sa);

    REQUIRE(topo.num_leaves(topo.root()) == t.size());
    for (size_t p = 0; p < topo.num_nodes(); ++p) {
        auto v = topo.node_at_preorder(p);
        REQUIRE(topo.preorder(v) == p);
        REQUIRE(topo.lca(v, v) == v);
        size_t l = topo.leftmost_leaf_rank(v);
        REQUIRE(topo.node_from_range(l, l + topo.num_leaves(v) - 1) == v);
        if (topo.is_leaf(v)) continue;
        size_t nc = topo.child_count(v);
        REQUIRE(nc >= 2);
        size_t leaves = 0;
        for (size_t j = 0; j < nc; ++j) {
            auto c = topo.child(v, j);
            REQUIRE(topo.parent(c) == v);
            REQUIRE(topo.child_ordinal(v, c) == j);
            leaves += topo.num_leaves(c);
        }
        REQUIRE(leaves == topo.num_leaves(v));
    }
    // lca against a brute ancestor walk
    std::uniform_int_distribution<size_t> p_d(0, topo.num_nodes() - 1);
    for (int q = 0; q < 500; ++q) {
        auto u = topo.node_at_preorder(p_d(rng));
        auto v = topo.node_at_preorder(p_d(rng));
        std::set<SuffixTreeTopo::Node> anc;
        for (auto x = u; x != SuffixTreeTopo::npos; x = topo.parent(x)) anc.insert(x);
        auto w = v;
        while (!anc.count(w)) w = topo.parent(w);
        REQUIRE(topo.lca(u, v) == w);
    }
}

TEST_CASE("invalid handles throw") {
    Text t = csax::make_text("abracadabra");
    auto bundle = csax::build_suffix_array(t);
    SuffixTreeTopo topo = SuffixTreeTopo::build(t.symbols, bundle.sa);
    CHECK_THROWS_AS(topo.preorder(topo.bp_length()), std::out_of_range);
    CHECK_THROWS_AS(topo.child(topo.root(), 99), std::out_of_range);
    CHECK_THROWS_AS(topo.leaf(t.size()), std::out_of_range);
}

TEST_CASE("topology serialization round trip") {
    Text t = csax::make_text("mississippi");
    auto bundle = csax::build_suffix_array(t);
    SuffixTreeTopo topo = SuffixTreeTopo::build(t.symbols, bundle.sa);
    csax::Writer w;
    topo.save(w);
    std::vector<csax::u8> buf = w.take();
    csax::Reader r(buf);
    SuffixTreeTopo topo2 = SuffixTreeTopo::load(r);
    REQUIRE(internal_intervals(topo) == internal_intervals(topo2));
    REQUIRE(topo2.num_nodes() == topo.num_nodes());
}
