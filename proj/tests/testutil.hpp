#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

// Shared helpers for randomized tests. All randomness is seeded explicitly
// so failures reproduce.
namespace testutil {

// Alphabet of `size` distinct non-zero bytes (capped at 255).
inline std::vector<unsigned char> alphabet(std::size_t size) {
    std::vector<unsigned char> a;
    for (std::size_t i = 0; i < size && i < 255; ++i) a.push_back(static_cast<unsigned char>(i + 1));
    return a;
}

inline std::string random_text(std::mt19937& rng, std::size_t n,
                               const std::vector<unsigned char>& alpha) {
    std::uniform_int_distribution<std::size_t> pick(0, alpha.size() - 1);
    std::string t(n, 0);
    for (auto& c : t) c = static_cast<char>(alpha[pick(rng)]);
    return t;
}

// Pattern sampled from the text (guaranteed hit) or random over the
// alphabet (mostly a miss for longer lengths).
inline std::string random_pattern(std::mt19937& rng, const std::string& text,
                                  const std::vector<unsigned char>& alpha, std::size_t max_len,
                                  bool from_text) {
    std::uniform_int_distribution<std::size_t> len_d(1, max_len);
    std::size_t len = len_d(rng);
    if (from_text && !text.empty()) {
        std::uniform_int_distribution<std::size_t> pos_d(0, text.size() - 1);
        std::size_t pos = pos_d(rng);
        if (len > text.size() - pos) len = text.size() - pos;
        return text.substr(pos, len);
    }
    return random_text(rng, len, alpha);
}

// Dense byte-to-code map matching the index's convention: used bytes get
// codes 1.. in byte order, the sentinel is code 0.
inline std::vector<int> byte_codes(const std::string& text) {
    std::vector<int> map(256, -1);
    std::vector<bool> used(256, false);
    for (unsigned char c : text) used[c] = true;
    int next = 1;
    for (int c = 1; c < 256; ++c)
        if (used[c]) map[c] = next++;
    return map;
}

inline std::vector<std::uint32_t> encode(const std::string& text_with_sentinel) {
    std::vector<int> map = byte_codes(text_with_sentinel);
    std::vector<std::uint32_t> out;
    for (unsigned char c : text_with_sentinel)
        out.push_back(c == 0 ? 0u : static_cast<std::uint32_t>(map[c]));
    return out;
}

}  // namespace testutil
