#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "csax/common.hpp"

namespace csax {

// Dense-coded text over [0..sigma-1], terminated by the sentinel code 0.
// The byte->code map preserves byte order, so code order equals byte order
// and the sentinel sorts first.
struct Text {
    std::vector<Symbol> symbols;             // length n, last symbol is 0
    u32 sigma = 0;                           // number of distinct codes incl. sentinel
    std::array<int, 256> byte_to_code{};     // -1 for unused bytes
    std::vector<u8> code_to_byte;            // codes 1..sigma-1

    size_t size() const { return symbols.size(); }
};

// Maps raw bytes to dense codes and appends the sentinel. Throws if the
// input contains byte 0x00, which is reserved for the sentinel.
inline Text make_text(std::string_view bytes) {
    Text t;
    std::array<bool, 256> used{};
    for (unsigned char c : bytes) {
        if (c == 0) throw std::invalid_argument("input contains reserved byte 0x00");
        used[c] = true;
    }
    t.byte_to_code.fill(-1);
    Symbol next = 1;
    for (int c = 1; c < 256; ++c) {
        if (used[c]) {
            t.byte_to_code[c] = static_cast<int>(next++);
            t.code_to_byte.push_back(static_cast<u8>(c));
        }
    }
    t.sigma = next;
    t.symbols.reserve(bytes.size() + 1);
    for (unsigned char c : bytes) t.symbols.push_back(static_cast<Symbol>(t.byte_to_code[c]));
    t.symbols.push_back(0);
    return t;
}

// Reverse of T[0..n-2] with a fresh sentinel appended; same length and map.
inline Text reverse_text(const Text& t) {
    Text r = t;
    r.symbols.assign(t.symbols.rbegin() + 1, t.symbols.rend());
    r.symbols.push_back(0);
    return r;
}

inline std::vector<u8> decode_bytes(const Text& t, const std::vector<Symbol>& codes) {
    std::vector<u8> out;
    out.reserve(codes.size());
    for (Symbol s : codes) out.push_back(s == 0 ? u8{0} : t.code_to_byte.at(s - 1));
    return out;
}

}  // namespace csax
