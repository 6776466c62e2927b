#pragma once

#include <bit>
#include <cstring>
#include <vector>

#include "csax/common.hpp"

namespace csax {

// Plain bitvector with rank/select directories.
//
// Layout: packed 64-bit words; a superblock counter (u64) every 512 bits and
// a block counter (u16, relative to the superblock) every 64 bits. Select is
// answered from sampled positions plus an in-block scan. Directories are
// rebuilt with build_directories(), never serialized.
class BitVec {
public:
    static constexpr size_t kBitsPerWord = 64;
    static constexpr size_t kWordsPerSuper = 8;
    static constexpr size_t kBitsPerSuper = kBitsPerWord * kWordsPerSuper;
    static constexpr size_t kSelectSample = 512;

    BitVec() = default;

    explicit BitVec(size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    // Takes ownership of pre-packed words (little-endian bit order within
    // each word); used by deserialization and the builder.
    static BitVec from_words(size_t nbits, std::vector<u64> words) {
        BitVec bv;
        bv.nbits_ = nbits;
        bv.words_ = std::move(words);
        bv.words_.resize((nbits + 63) / 64, 0);
        bv.build_directories();
        return bv;
    }

    static BitVec from_bools(const std::vector<bool>& bits) {
        BitVec bv(bits.size());
        for (size_t i = 0; i < bits.size(); ++i)
            if (bits[i]) bv.set(i);
        bv.build_directories();
        return bv;
    }

    void set(size_t i) { words_[i >> 6] |= u64{1} << (i & 63); }

    bool get(size_t i) const {
        if (i >= nbits_) throw std::out_of_range("BitVec::get");
        return (words_[i >> 6] >> (i & 63)) & 1;
    }

    size_t size() const { return nbits_; }
    size_t ones() const { return ones_; }
    size_t zeros() const { return nbits_ - ones_; }
    const std::vector<u64>& words() const { return words_; }

    // in-memory footprint of the rank/select acceleration tables
    u64 directory_bits() const {
        return super_.size() * 64 + block_.size() * 16 +
               (sel1_sample_.size() + sel0_sample_.size()) * 64;
    }

    // Single pass over the words; O(n/64) time.
    void build_directories() {
        if (!words_.empty()) {  // mask tail bits beyond nbits_
            size_t tail = nbits_ & 63;
            if (tail) words_.back() &= (u64{1} << tail) - 1;
        }
        size_t nsuper = (words_.size() + kWordsPerSuper - 1) / kWordsPerSuper + 1;
        super_.assign(nsuper, 0);
        block_.assign(words_.size(), 0);
        u64 total = 0, insuper = 0;
        for (size_t w = 0; w < words_.size(); ++w) {
            if (w % kWordsPerSuper == 0) {
                super_[w / kWordsPerSuper] = total;
                insuper = 0;
            }
            block_[w] = static_cast<u16>(insuper);
            u64 pc = std::popcount(words_[w]);
            total += pc;
            insuper += pc;
        }
        super_[nsuper - 1] = total;
        ones_ = total;
        build_select_samples();
    }

    // Number of set bits in [0..i]; i = -1 is allowed and yields 0.
    size_t rank1(i64 i) const {
        if (i < 0) return 0;
        if (static_cast<size_t>(i) >= nbits_) throw std::out_of_range("BitVec::rank1");
        size_t w = static_cast<size_t>(i) >> 6;
        u64 mask = (i & 63) == 63 ? ~u64{0} : (u64{1} << ((i & 63) + 1)) - 1;
        return super_[w / kWordsPerSuper] + block_[w] + std::popcount(words_[w] & mask);
    }

    size_t rank0(i64 i) const {
        if (i < 0) return 0;
        return static_cast<size_t>(i) + 1 - rank1(i);
    }

    // Position of the k-th set bit, 1 <= k <= ones().
    size_t select1(size_t k) const {
        if (k == 0 || k > ones_) throw std::out_of_range("BitVec::select1");
        size_t s = (k - 1) / kSelectSample;
        size_t w = sel1_sample_[s] >> 6;
        // advance superblock-wise, then word-wise
        size_t sb = w / kWordsPerSuper;
        while (sb + 1 < super_.size() && super_[sb + 1] < k) ++sb;
        w = std::max(w, sb * kWordsPerSuper);
        u64 left = k - super_[sb] - block_[w];
        for (;;) {
            u64 pc = std::popcount(words_[w]);
            if (pc >= left) break;
            left -= pc;
            ++w;
        }
        return (w << 6) + select_in_word(words_[w], left);
    }

    // Position of the k-th zero bit, 1 <= k <= zeros().
    size_t select0(size_t k) const {
        if (k == 0 || k > zeros()) throw std::out_of_range("BitVec::select0");
        size_t s = (k - 1) / kSelectSample;
        size_t w = sel0_sample_[s] >> 6;
        size_t sb = w / kWordsPerSuper;
        while (sb + 1 < super_.size() && zeros_before_super(sb + 1) < k) ++sb;
        w = std::max(w, sb * kWordsPerSuper);
        u64 left = k - (w * 64 - (super_[sb] + block_[w]));
        for (;;) {
            u64 inv = ~words_[w];
            u64 pc = std::popcount(inv);
            if (pc >= left) break;
            left -= pc;
            ++w;
        }
        return (w << 6) + select_in_word(~words_[w], left);
    }

private:
    static size_t select_in_word(u64 word, u64 k) {
        // k-th (1-based) set bit within word
        for (size_t b = 0;; ++b) {
            if ((word >> b) & 1) {
                if (--k == 0) return b;
            }
        }
    }

    size_t zeros_before_super(size_t sb) const {
        return sb * kBitsPerSuper - super_[sb];
    }

    void build_select_samples() {
        sel1_sample_.clear();
        sel0_sample_.clear();
        size_t c1 = 0, c0 = 0;
        for (size_t i = 0; i < nbits_; ++i) {
            bool b = (words_[i >> 6] >> (i & 63)) & 1;
            if (b) {
                if (c1 % kSelectSample == 0) sel1_sample_.push_back(i);
                ++c1;
            } else {
                if (c0 % kSelectSample == 0) sel0_sample_.push_back(i);
                ++c0;
            }
        }
    }

    size_t nbits_ = 0;
    u64 ones_ = 0;
    std::vector<u64> words_;
    std::vector<u64> super_;
    std::vector<u16> block_;
    std::vector<u64> sel1_sample_;
    std::vector<u64> sel0_sample_;
};

// Append-style builder used where bits are produced left to right.
class BitVecBuilder {
public:
    void push_back(bool b) {
        if (n_ % 64 == 0) words_.push_back(0);
        if (b) words_.back() |= u64{1} << (n_ & 63);
        ++n_;
    }
    size_t size() const { return n_; }
    BitVec take() {
        BitVec bv = BitVec::from_words(n_, std::move(words_));
        words_.clear();
        n_ = 0;
        return bv;
    }

private:
    size_t n_ = 0;
    std::vector<u64> words_;
};

}  // namespace csax
