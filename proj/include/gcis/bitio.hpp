#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "gcis/error.hpp"

// Flat bitstreams stored LSB-first inside 64-bit words: bit j of the stream
// lives in word j/64 at bit j%64. Elias-gamma codewords are written with
// their leading zeros first, then the value bits from most significant to
// least significant, so a reader can scan for the terminating 1 bit.

namespace gcis {

class bit_writer {
public:
    void push_bit(bool b) {
        if (bits_ % 64 == 0) words_.push_back(0);
        if (b) words_.back() |= uint64_t{1} << (bits_ % 64);
        ++bits_;
    }

    // width low bits of value, least significant first
    void push_bits(uint64_t value, unsigned width) {
        for (unsigned i = 0; i < width; ++i) push_bit((value >> i) & 1);
    }

    uint64_t bit_size() const { return bits_; }
    const std::vector<uint64_t>& words() const { return words_; }
    std::vector<uint64_t> take_words() { return std::move(words_); }

private:
    std::vector<uint64_t> words_;
    uint64_t bits_ = 0;
};

class bit_reader {
public:
    bit_reader(std::span<const uint64_t> words, uint64_t bit_size, uint64_t pos = 0)
        : words_(words), size_(bit_size), pos_(pos) {}

    uint64_t tell() const { return pos_; }
    void seek(uint64_t pos) { pos_ = pos; }

    bool read_bit() {
        if (pos_ >= size_) raise(errc::truncated_stream, "bit stream exhausted");
        bool b = (words_[pos_ / 64] >> (pos_ % 64)) & 1;
        ++pos_;
        return b;
    }

    uint64_t read_bits(unsigned width) {
        uint64_t v = 0;
        for (unsigned i = 0; i < width; ++i)
            if (read_bit()) v |= uint64_t{1} << i;
        return v;
    }

private:
    std::span<const uint64_t> words_;
    uint64_t size_;
    uint64_t pos_;
};

inline void gamma_encode(bit_writer& w, uint64_t v) {
    if (v == 0) raise(errc::invalid_value, "gamma code undefined for 0");
    unsigned width = std::bit_width(v);
    for (unsigned i = 1; i < width; ++i) w.push_bit(false);
    for (unsigned i = width; i-- > 0;) w.push_bit((v >> i) & 1);
}

inline uint64_t gamma_decode(bit_reader& r) {
    unsigned zeros = 0;
    while (!r.read_bit()) ++zeros;
    uint64_t v = 1;
    for (unsigned i = 0; i < zeros; ++i) v = (v << 1) | (r.read_bit() ? 1 : 0);
    return v;
}

inline uint64_t get_bits(std::span<const uint64_t> words, uint64_t pos, unsigned width) {
    uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i)
        if ((words[(pos + i) / 64] >> ((pos + i) % 64)) & 1) v |= uint64_t{1} << i;
    return v;
}

} // namespace gcis
