#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gcis/bitio.hpp"
#include "gcis/elias_fano.hpp"

namespace {

std::string bits_of(const gcis::bit_writer& w) {
    std::string s;
    for (uint64_t i = 0; i < w.bit_size(); ++i)
        s.push_back((w.words()[i / 64] >> (i % 64)) & 1 ? '1' : '0');
    return s;
}

std::string gamma_bits(uint64_t v) {
    gcis::bit_writer w;
    gcis::gamma_encode(w, v);
    return bits_of(w);
}

} // namespace

TEST_CASE("gamma code table") {
    CHECK(gamma_bits(1) == "1");
    CHECK(gamma_bits(2) == "010");
    CHECK(gamma_bits(3) == "011");
    CHECK(gamma_bits(4) == "00100");
    CHECK(gamma_bits(7) == "00111");
    CHECK(gamma_bits(8) == "0001000");
    CHECK_THROWS_AS(gamma_bits(0), gcis::error);
}

TEST_CASE("gamma round trip and self-delimitation") {
    gcis::bit_writer w;
    for (uint64_t v = 1; v <= 1000000; ++v) gcis::gamma_encode(w, v);
    auto words = w.words();
    gcis::bit_reader r(words, w.bit_size());
    for (uint64_t v = 1; v <= 1000000; ++v) CHECK(gcis::gamma_decode(r) == v);
    CHECK(r.tell() == w.bit_size());
}

TEST_CASE("gamma decode of a truncated stream") {
    gcis::bit_writer w;
    gcis::gamma_encode(w, 1000);
    auto words = w.words();
    gcis::bit_reader r(words, w.bit_size() - 3);
    try {
        gcis::gamma_decode(r);
        FAIL("expected truncated_stream");
    } catch (const gcis::error& e) {
        CHECK(e.code() == gcis::errc::truncated_stream);
    }
}

TEST_CASE("elias-fano access equals the plain sequence") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 50; ++trial) {
        size_t n = 1 + rng() % 2000;
        std::vector<uint64_t> vals(n);
        uint64_t cur = 0;
        for (auto& v : vals) {
            cur += rng() % (trial % 2 ? 3 : 5000);
            v = cur;
        }
        auto ef = gcis::elias_fano::from_values(vals);
        CHECK(ef.size() == n);
        for (size_t i = 0; i < n; ++i) CHECK(ef.at(i) == vals[i]);
        CHECK_THROWS_AS(ef.at(n), gcis::error);
    }
}

TEST_CASE("elias-fano rejects a decreasing sequence") {
    std::vector<uint64_t> bad{5, 3};
    CHECK_THROWS_AS(gcis::elias_fano::from_values(bad), gcis::error);
}

TEST_CASE("elias-fano survives the parts round trip") {
    std::vector<uint64_t> vals{0, 0, 1, 7, 7, 19, 64, 65, 1000};
    auto ef = gcis::elias_fano::from_values(vals);
    auto ef2 = gcis::elias_fano::from_parts(ef.universe(), ef.size(), ef.low_width(),
                                            ef.low_words(), ef.high_words());
    for (size_t i = 0; i < vals.size(); ++i) CHECK(ef2.at(i) == vals[i]);
}
