#include "csax/suffix.hpp"

#include <algorithm>

namespace csax {

namespace {

constexpr u32 kEmpty = 0xFFFFFFFFu;

void fill_buckets(const u32* t, u32 n, u32 sigma, std::vector<u32>& bkt, bool ends) {
    std::fill(bkt.begin(), bkt.end(), 0);
    for (u32 i = 0; i < n; ++i) ++bkt[t[i]];
    u32 sum = 0;
    for (u32 a = 0; a < sigma; ++a) {
        sum += bkt[a];
        bkt[a] = ends ? sum : sum - bkt[a];
    }
}

void induce(const u32* t, u32 n, u32 sigma, const std::vector<bool>& stype,
            std::vector<u32>& bkt, u32* sa) {
    fill_buckets(t, n, sigma, bkt, false);
    for (u32 i = 0; i < n; ++i) {
        u32 j = sa[i];
        if (j != kEmpty && j > 0 && !stype[j - 1]) sa[bkt[t[j - 1]]++] = j - 1;
    }
    fill_buckets(t, n, sigma, bkt, true);
    for (u32 i = n; i-- > 0;) {
        u32 j = sa[i];
        if (j != kEmpty && j > 0 && stype[j - 1]) sa[--bkt[t[j - 1]]] = j - 1;
    }
}

// t[n-1] must be the unique smallest symbol.
void sa_is(const u32* t, u32 n, u32 sigma, u32* sa) {
    if (n == 0) return;
    if (n == 1) {
        sa[0] = 0;
        return;
    }
    std::vector<bool> stype(n);
    stype[n - 1] = true;
    for (u32 i = n - 1; i-- > 0;)
        stype[i] = t[i] < t[i + 1] || (t[i] == t[i + 1] && stype[i + 1]);
    auto is_lms = [&](u32 i) { return i > 0 && stype[i] && !stype[i - 1]; };

    std::vector<u32> bkt(sigma);
    std::fill(sa, sa + n, kEmpty);
    fill_buckets(t, n, sigma, bkt, true);
    for (u32 i = 1; i < n; ++i)
        if (is_lms(i)) sa[--bkt[t[i]]] = i;
    induce(t, n, sigma, stype, bkt, sa);

    // sorted LMS substrings, compacted to the front
    u32 n1 = 0;
    for (u32 i = 0; i < n; ++i)
        if (is_lms(sa[i])) sa[n1++] = sa[i];

    // name them; equal names iff equal LMS substrings (symbols and types)
    std::fill(sa + n1, sa + n, kEmpty);
    u32 names = 0, prev = kEmpty;
    for (u32 i = 0; i < n1; ++i) {
        u32 pos = sa[i];
        bool diff = prev == kEmpty;
        for (u32 d = 0; !diff; ++d) {
            if (pos + d == n || prev + d == n || t[pos + d] != t[prev + d] ||
                stype[pos + d] != stype[prev + d]) {
                diff = true;
            } else if (d > 0 && (is_lms(pos + d) || is_lms(prev + d))) {
                diff = !(is_lms(pos + d) && is_lms(prev + d));
                break;
            }
        }
        if (diff) {
            ++names;
            prev = pos;
        }
        sa[n1 + pos / 2] = names - 1;
    }
    std::vector<u32> s1(n1);
    for (u32 i = n1, k = 0; i < n; ++i)
        if (sa[i] != kEmpty) s1[k++] = sa[i];

    std::vector<u32> lms;
    lms.reserve(n1);
    for (u32 i = 1; i < n; ++i)
        if (is_lms(i)) lms.push_back(i);

    std::vector<u32> sa1(n1);
    if (names < n1) {
        sa_is(s1.data(), n1, names, sa1.data());
    } else {
        for (u32 i = 0; i < n1; ++i) sa1[s1[i]] = i;
    }

    std::fill(sa, sa + n, kEmpty);
    fill_buckets(t, n, sigma, bkt, true);
    for (u32 i = n1; i-- > 0;) sa[--bkt[t[lms[sa1[i]]]]] = lms[sa1[i]];
    induce(t, n, sigma, stype, bkt, sa);
}

}  // namespace

std::vector<u32> build_suffix_array_raw(const std::vector<Symbol>& t, u32 sigma) {
    std::vector<u32> sa(t.size());
    sa_is(t.data(), static_cast<u32>(t.size()), sigma, sa.data());
    return sa;
}

SuffixArrayBundle build_suffix_array(const Text& t) {
    SuffixArrayBundle b;
    b.sa = build_suffix_array_raw(t.symbols, t.sigma);
    size_t n = t.size();
    b.bwt.resize(n);
    for (size_t i = 0; i < n; ++i) b.bwt[i] = t.symbols[(b.sa[i] + n - 1) % n];
    return b;
}

std::vector<u32> build_lcp(const std::vector<Symbol>& t, const std::vector<u32>& sa) {
    size_t n = t.size();
    std::vector<u32> rank(n), lcp(n, 0);
    for (size_t i = 0; i < n; ++i) rank[sa[i]] = static_cast<u32>(i);
    u32 h = 0;
    for (size_t i = 0; i < n; ++i) {
        if (rank[i] > 0) {
            size_t j = sa[rank[i] - 1];
            while (i + h < n && j + h < n && t[i + h] == t[j + h]) ++h;
            lcp[rank[i]] = h;
            if (h) --h;
        } else {
            h = 0;
        }
    }
    return lcp;
}

std::vector<u32> invert_permutation(const std::vector<u32>& sa) {
    std::vector<u32> inv(sa.size());
    for (size_t i = 0; i < sa.size(); ++i) inv[sa[i]] = static_cast<u32>(i);
    return inv;
}

}  // namespace csax
