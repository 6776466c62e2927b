#pragma once

#include <cstring>
#include <string>
#include <vector>

#include "csax/common.hpp"

namespace csax {

// Little-endian byte buffer writer for the index container.
class Writer {
public:
    void put_u8(u8 v) { buf_.push_back(v); }
    void put_u16(u16 v) { put_le(v, 2); }
    void put_u32(u32 v) { put_le(v, 4); }
    void put_u64(u64 v) { put_le(v, 8); }

    void put_bytes(const void* p, size_t n) {
        const u8* b = static_cast<const u8*>(p);
        buf_.insert(buf_.end(), b, b + n);
    }

    template <class T>
    void put_vec(const std::vector<T>& v) {
        static_assert(std::is_trivially_copyable_v<T>);
        put_u64(v.size());
        for (const T& x : v) put_le(static_cast<u64>(x), sizeof(T));
    }

    void align8() {
        while (buf_.size() % 8) buf_.push_back(0);
    }

    size_t size() const { return buf_.size(); }
    const std::vector<u8>& bytes() const { return buf_; }
    std::vector<u8> take() { return std::move(buf_); }

private:
    void put_le(u64 v, int n) {
        for (int i = 0; i < n; ++i) buf_.push_back(static_cast<u8>(v >> (8 * i)));
    }
    std::vector<u8> buf_;
};

struct CorruptIndex : std::runtime_error {
    explicit CorruptIndex(const std::string& what) : std::runtime_error(what) {}
};

class Reader {
public:
    Reader(const u8* data, size_t size) : p_(data), end_(data + size) {}
    explicit Reader(const std::vector<u8>& buf) : Reader(buf.data(), buf.size()) {}

    u8 get_u8() { return static_cast<u8>(get_le(1)); }
    u16 get_u16() { return static_cast<u16>(get_le(2)); }
    u32 get_u32() { return static_cast<u32>(get_le(4)); }
    u64 get_u64() { return get_le(8); }

    void get_bytes(void* out, size_t n) {
        need(n);
        std::memcpy(out, p_, n);
        p_ += n;
        consumed_ += n;
    }

    template <class T>
    std::vector<T> get_vec() {
        static_assert(std::is_trivially_copyable_v<T>);
        u64 n = get_u64();
        if (n > remaining() / (sizeof(T) ? sizeof(T) : 1))
            throw CorruptIndex("vector length exceeds section");
        std::vector<T> v;
        v.reserve(n);
        for (u64 i = 0; i < n; ++i) v.push_back(static_cast<T>(get_le(sizeof(T))));
        return v;
    }

    void align8(size_t base_offset = 0) {
        while ((consumed() + base_offset) % 8) get_u8();
    }

    size_t remaining() const { return static_cast<size_t>(end_ - p_); }
    size_t consumed() const { return consumed_; }
    bool done() const { return p_ == end_; }

private:
    void need(size_t n) {
        if (remaining() < n) throw CorruptIndex("truncated section");
    }
    u64 get_le(size_t n) {
        need(n);
        u64 v = 0;
        for (size_t i = 0; i < n; ++i) v |= u64{p_[i]} << (8 * i);
        p_ += n;
        consumed_ += n;
        return v;
    }
    const u8* p_;
    const u8* end_;
    size_t consumed_ = 0;
};

// 64-bit FNV-1a, used for the text digest and header checksum.
inline u64 fnv1a(const void* data, size_t n, u64 seed = 14695981039346656037ull) {
    const u8* p = static_cast<const u8*>(data);
    u64 h = seed;
    for (size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace csax
