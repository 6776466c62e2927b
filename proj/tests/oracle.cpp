#include "oracle.hpp"

#include <algorithm>

namespace oracle {

namespace {
bool suffix_less(const std::string& t, std::size_t a, std::size_t b) {
    const unsigned char* p = reinterpret_cast<const unsigned char*>(t.data());
    return std::lexicographical_compare(p + a, p + t.size(), p + b, p + t.size());
}
}  // namespace

std::vector<std::size_t> naive_sa(const std::string& t) {
    std::vector<std::size_t> sa(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) sa[i] = i;
    std::sort(sa.begin(), sa.end(),
              [&](std::size_t a, std::size_t b) { return suffix_less(t, a, b); });
    return sa;
}

std::string naive_bwt(const std::string& t) {
    std::vector<std::size_t> sa = naive_sa(t);
    std::string bwt(t.size(), 0);
    for (std::size_t i = 0; i < t.size(); ++i) bwt[i] = t[(sa[i] + t.size() - 1) % t.size()];
    return bwt;
}

std::size_t naive_count(const std::string& text, const std::string& pat) {
    if (pat.empty()) return text.size() + 1;
    if (pat.size() > text.size()) return 0;
    std::size_t c = 0;
    for (std::size_t i = 0; i + pat.size() <= text.size(); ++i)
        if (text.compare(i, pat.size(), pat) == 0) ++c;
    return c;
}

std::vector<std::size_t> naive_positions(const std::string& text, const std::string& pat) {
    std::vector<std::size_t> out;
    if (pat.empty()) {
        for (std::size_t i = 0; i <= text.size(); ++i) out.push_back(i);
        return out;
    }
    if (pat.size() > text.size()) return out;
    for (std::size_t i = 0; i + pat.size() <= text.size(); ++i)
        if (text.compare(i, pat.size(), pat) == 0) out.push_back(i);
    return out;
}

std::size_t naive_rank(const std::vector<std::uint32_t>& s, std::uint32_t a, std::ptrdiff_t i) {
    std::size_t c = 0;
    for (std::ptrdiff_t k = 0; k <= i; ++k)
        if (s[static_cast<std::size_t>(k)] == a) ++c;
    return c;
}

std::optional<std::pair<std::size_t, std::size_t>> naive_interval_rank(
    const std::vector<std::uint32_t>& s, std::uint32_t a, std::size_t i, std::size_t j) {
    bool present = false;
    for (std::size_t k = i; k <= j; ++k)
        if (s[k] == a) present = true;
    if (!present) return std::nullopt;
    return std::make_pair(naive_rank(s, a, static_cast<std::ptrdiff_t>(i) - 1),
                          naive_rank(s, a, static_cast<std::ptrdiff_t>(j)));
}

namespace {
void trie_rec(const std::string& t, const std::vector<std::size_t>& sa, std::size_t l,
              std::size_t r, std::size_t depth, std::vector<TreeNode>& out) {
    if (l == r) return;  // single suffix: a leaf
    // extend the shared prefix as far as every suffix in [l..r] agrees
    for (;;) {
        if (sa[l] + depth >= t.size()) break;
        unsigned char c = static_cast<unsigned char>(t[sa[l] + depth]);
        bool same = true;
        for (std::size_t k = l + 1; k <= r; ++k) {
            if (sa[k] + depth >= t.size() ||
                static_cast<unsigned char>(t[sa[k] + depth]) != c) {
                same = false;
                break;
            }
        }
        if (!same) break;
        ++depth;
    }
    out.push_back({l, r, depth});
    // children: maximal runs agreeing on the symbol at offset `depth`
    std::size_t k = l;
    while (k <= r) {
        std::size_t e = k;
        if (sa[k] + depth < t.size()) {
            unsigned char c = static_cast<unsigned char>(t[sa[k] + depth]);
            while (e + 1 <= r && sa[e + 1] + depth < t.size() &&
                   static_cast<unsigned char>(t[sa[e + 1] + depth]) == c)
                ++e;
        }
        trie_rec(t, sa, k, e, depth + 1, out);
        k = e + 1;
    }
}
}  // namespace

std::vector<TreeNode> naive_suffix_tree(const std::string& t) {
    std::vector<TreeNode> out;
    std::vector<std::size_t> sa = naive_sa(t);
    trie_rec(t, sa, 0, t.size() - 1, 0, out);
    return out;
}

}  // namespace oracle
