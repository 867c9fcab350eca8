#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "gcis/bitio.hpp"
#include "gcis/error.hpp"

// Elias-Fano coding of a non-decreasing sequence: each value is split into
// low bits (packed) and a high part written in unary into a bit vector of
// buckets. at(i) needs select on the i-th set high bit, supported here by
// sampling every 64th set bit and scanning words with popcount.

namespace gcis {

class elias_fano {
public:
    elias_fano() = default;

    static elias_fano from_values(std::span<const uint64_t> values) {
        elias_fano ef;
        ef.count_ = values.size();
        ef.universe_ = values.empty() ? 0 : values.back();
        uint64_t buckets = ef.count_ ? ef.universe_ / ef.count_ : 0;
        ef.low_width_ = buckets > 1 ? static_cast<uint8_t>(std::bit_width(buckets) - 1) : 0;
        bit_writer low;
        uint64_t high_bits = ef.count_ + (ef.universe_ >> ef.low_width_) + 1;
        ef.high_.assign((high_bits + 63) / 64, 0);
        uint64_t prev = 0;
        for (size_t i = 0; i < values.size(); ++i) {
            uint64_t v = values[i];
            if (v < prev) raise(errc::invalid_value, "elias_fano: sequence must be non-decreasing");
            prev = v;
            low.push_bits(v, ef.low_width_);
            uint64_t pos = (v >> ef.low_width_) + i;
            ef.high_[pos / 64] |= uint64_t{1} << (pos % 64);
        }
        ef.high_bit_size_ = high_bits;
        ef.low_ = low.take_words();
        ef.build_samples();
        return ef;
    }

    uint64_t at(size_t i) const {
        if (i >= count_) raise(errc::out_of_range, "elias_fano: index out of range");
        uint64_t pos = select1(i);
        uint64_t high = pos - i;
        uint64_t low = low_width_ ? get_bits(low_, uint64_t(i) * low_width_, low_width_) : 0;
        return (high << low_width_) | low;
    }

    size_t size() const { return count_; }
    uint64_t universe() const { return universe_; }
    uint8_t low_width() const { return low_width_; }
    const std::vector<uint64_t>& low_words() const { return low_; }
    const std::vector<uint64_t>& high_words() const { return high_; }

    // reconstruction from serialized fields; word counts are derived from
    // universe/count/low_width, so only the raw words travel on disk
    static elias_fano from_parts(uint64_t universe, uint64_t count, uint8_t low_width,
                                 std::vector<uint64_t> low, std::vector<uint64_t> high) {
        elias_fano ef;
        ef.universe_ = universe;
        ef.count_ = count;
        ef.low_width_ = low_width;
        ef.low_ = std::move(low);
        ef.high_ = std::move(high);
        ef.high_bit_size_ = count + (universe >> low_width) + 1;
        if (ef.low_.size() != (count * low_width + 63) / 64 ||
            ef.high_.size() != (ef.high_bit_size_ + 63) / 64)
            raise(errc::truncated_stream, "elias_fano: word count mismatch");
        ef.build_samples();
        return ef;
    }

    static uint64_t low_word_count(uint64_t count, uint8_t low_width) {
        return (count * low_width + 63) / 64;
    }
    static uint64_t high_word_count(uint64_t universe, uint64_t count, uint8_t low_width) {
        return (count + (universe >> low_width) + 1 + 63) / 64;
    }

private:
    static constexpr uint64_t sample_rate = 64;

    void build_samples() {
        samples_.clear();
        uint64_t seen = 0;
        for (size_t w = 0; w < high_.size(); ++w) {
            uint64_t word = high_[w];
            while (word) {
                if (seen % sample_rate == 0)
                    samples_.push_back(w * 64 + static_cast<uint64_t>(std::countr_zero(word)));
                word &= word - 1;
                ++seen;
            }
        }
        ones_ = seen;
    }

    uint64_t select1(uint64_t rank) const {
        uint64_t pos = samples_[rank / sample_rate];
        uint64_t seen = rank / sample_rate * sample_rate;
        uint64_t w = pos / 64;
        uint64_t word = high_[w] & ~((uint64_t{1} << (pos % 64)) - 1);
        while (true) {
            unsigned c = static_cast<unsigned>(std::popcount(word));
            if (seen + c > rank) {
                for (;; word &= word - 1) {
                    if (seen == rank) return w * 64 + std::countr_zero(word);
                    ++seen;
                }
            }
            seen += c;
            word = high_[++w];
        }
    }

    uint64_t universe_ = 0;
    uint64_t count_ = 0;
    uint64_t high_bit_size_ = 0;
    uint64_t ones_ = 0;
    uint8_t low_width_ = 0;
    std::vector<uint64_t> low_, high_;
    std::vector<uint64_t> samples_;
};

} // namespace gcis
