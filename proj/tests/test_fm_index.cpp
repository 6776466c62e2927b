#include <algorithm>
#include <random>
#include <vector>

#include "csax/fm_index.hpp"
#include "csax/serialize.hpp"
#include "csax/suffix.hpp"
#include "csax/text.hpp"
#include "doctest.h"
#include "oracle.hpp"
#include "testutil.hpp"

using csax::FMIndex;
using csax::QueryStats;
using csax::Symbol;
using csax::Text;

namespace {
// Backward search of a coded pattern, symbols fed first to last: over the
// reversed-text BWT this matches the reversed pattern, i.e. occurrences of
// the pattern in the original text.
std::optional<std::pair<size_t, size_t>> search(const FMIndex& fm, const std::vector<Symbol>& pat,
                                                QueryStats* qs = nullptr) {
    size_t l = 0, r = fm.size() - 1;
    for (Symbol a : pat) {
        auto step = fm.backward_step(a, l, r, qs);
        if (!step) return std::nullopt;
        l = step->first;
        r = step->second;
    }
    return std::make_pair(l, r);
}

std::vector<Symbol> encode_pat(const Text& t, const std::string& pat) {
    std::vector<Symbol> out;
    for (unsigned char c : pat) {
        REQUIRE(t.byte_to_code[c] >= 0);
        out.push_back(static_cast<Symbol>(t.byte_to_code[c]));
    }
    return out;
}
}  // namespace

TEST_CASE("banana accumulators and backward steps") {
    Text t = csax::make_text("banana");
    FMIndex fm = FMIndex::build(t, 2);
    REQUIRE(fm.size() == 7);
    REQUIRE(fm.acc() == std::vector<csax::u64>{0, 1, 4, 5, 7});

    auto a = fm.backward_step(1, 0, 6);  // 'a'
    REQUIRE(a.has_value());
    CHECK(a->first == 1);
    CHECK(a->second == 3);
    auto b = fm.backward_step(2, 0, 6);  // 'b'
    REQUIRE(b.has_value());
    CHECK(b->first == 4);
    CHECK(b->second == 4);
    auto s = fm.backward_step(0, 0, 6);  // sentinel
    REQUIRE(s.has_value());
    CHECK(s->first == 0);
    CHECK(s->second == 0);
    // 'b' never precedes 'b'
    CHECK(!fm.backward_step(2, 4, 4).has_value());

    // precomputed-rank variant agrees with the rank-querying one
    auto pre = fm.backward_step_with_ranks(1, 0, 3);
    CHECK(pre.first == a->first);
    CHECK(pre.second == a->second);
}

TEST_CASE("banana locate and extract") {
    Text t = csax::make_text("banana");
    FMIndex fm = FMIndex::build(t, 2);
    auto iv = search(fm, encode_pat(t, "ana"));
    REQUIRE(iv.has_value());
    auto pos = fm.locate(iv->first, iv->second, 3);
    std::sort(pos.begin(), pos.end());
    REQUIRE(pos == std::vector<csax::u64>{1, 3});

    auto got = fm.extract(1, 4);
    REQUIRE(csax::decode_bytes(t, got) == std::vector<csax::u8>{'a', 'n', 'a', 'n'});
    auto tail = fm.extract(4, 10);  // clamps past the end, sentinel included
    REQUIRE(csax::decode_bytes(t, tail) == std::vector<csax::u8>{'n', 'a', 0});
}

TEST_CASE("lf is the suffix-array predecessor map") {
    std::mt19937 rng(606);
    for (size_t sigma : {2, 4, 16, 64}) {
        auto alpha = testutil::alphabet(sigma);
        std::string text = testutil::random_text(rng, 1200, alpha);
        Text t = csax::make_text(text);
        FMIndex fm = FMIndex::build(t, 4);

        std::string rev(text.rbegin(), text.rend());
        auto sa_rev = oracle::naive_sa(rev + std::string(1, '\0'));
        size_t n = sa_rev.size();
        REQUIRE(fm.size() == n);

        QueryStats st;
        std::vector<bool> hit(n, false);
        for (size_t j = 0; j < n; ++j) {
            size_t k = fm.lf(j, &st);
            REQUIRE(sa_rev[k] == (sa_rev[j] + n - 1) % n);
            REQUIRE(!hit[k]);
            hit[k] = true;
        }
        CHECK(st.general_rank == 0);  // LF uses access + partial rank only
        CHECK(st.partial_rank == n);
    }
}

TEST_CASE("locate and extract match the text") {
    std::mt19937 rng(9090);
    for (size_t sigma : {2, 16, 200}) {
        auto alpha = testutil::alphabet(sigma);
        for (csax::u32 b : {1u, 3u, 16u}) {
            std::string text = testutil::random_text(rng, 2000, alpha);
            Text t = csax::make_text(text);
            FMIndex fm = FMIndex::build(t, b);
            REQUIRE(fm.sample_rate() == b);

            for (int q = 0; q < 60; ++q) {
                std::string pat = testutil::random_pattern(rng, text, alpha, 12, q % 2 == 0);
                auto want = oracle::naive_positions(text, pat);
                auto iv = search(fm, encode_pat(t, pat));
                if (!iv) {
                    REQUIRE(want.empty());
                    continue;
                }
                auto pos = fm.locate(iv->first, iv->second, pat.size());
                std::sort(pos.begin(), pos.end());
                REQUIRE(pos.size() == want.size());
                for (size_t i = 0; i < want.size(); ++i) REQUIRE(pos[i] == want[i]);
            }

            QueryStats st;
            for (int q = 0; q < 40; ++q) {
                std::uniform_int_distribution<size_t> i_d(0, text.size() - 1);
                std::uniform_int_distribution<size_t> l_d(1, 50);
                size_t i = i_d(rng), len = l_d(rng);
                auto got = csax::decode_bytes(t, fm.extract(i, len, &st));
                size_t take = std::min(len, text.size() - i);
                for (size_t k = 0; k < take; ++k)
                    REQUIRE(got[k] == static_cast<csax::u8>(text[i + k]));
                if (got.size() > take) {
                    REQUIRE(got.size() == take + 1);
                    REQUIRE(got.back() == 0);  // sentinel reached
                }
            }
            CHECK(st.general_rank == 0);  // extraction never touches general rank
        }
    }
}

TEST_CASE("serialization round trip") {
    std::mt19937 rng(414);
    auto alpha = testutil::alphabet(10);
    std::string text = testutil::random_text(rng, 900, alpha);
    Text t = csax::make_text(text);
    FMIndex fm = FMIndex::build(t, 5);

    csax::Writer w;
    fm.save(w);
    std::vector<csax::u8> buf = w.take();
    csax::Reader r(buf);
    FMIndex fm2 = FMIndex::load(r);
    REQUIRE(fm2.size() == fm.size());
    REQUIRE(fm2.acc() == fm.acc());
    for (size_t j = 0; j < fm.size(); ++j) REQUIRE(fm2.lf(j) == fm.lf(j));
    for (int q = 0; q < 30; ++q) {
        std::string pat = testutil::random_pattern(rng, text, alpha, 8, true);
        auto iv = search(fm2, encode_pat(t, pat));
        REQUIRE(iv.has_value());
        auto pos = fm2.locate(iv->first, iv->second, pat.size());
        std::sort(pos.begin(), pos.end());
        auto want = oracle::naive_positions(text, pat);
        REQUIRE(pos.size() == want.size());
        for (size_t i = 0; i < want.size(); ++i) REQUIRE(pos[i] == want[i]);
    }
}
