#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "gcis/builder.hpp"
#include "gcis/index_io.hpp"
#include "oracles.hpp"

namespace {

std::string to_bytes(const gcis::nep_store& st) {
    std::ostringstream os;
    gcis::write_index(os, st);
    return std::move(os).str();
}

std::string to_bytes(const gcis::uni_store& st) {
    std::ostringstream os;
    gcis::write_index(os, st);
    return std::move(os).str();
}

std::variant<gcis::nep_store, gcis::uni_store> from_bytes(std::string data) {
    std::istringstream is(std::move(data));
    return gcis::read_index(is);
}

gcis::errc code_of(std::string data) {
    try {
        from_bytes(std::move(data));
    } catch (const gcis::error& e) {
        return e.code();
    }
    throw std::runtime_error("expected a decode error");
}

} // namespace

TEST_CASE("nep serialization round trip is bit-exact") {
    std::mt19937_64 rng(3);
    std::string t = oracles::random_text(rng, 4000, 3);
    gcis::nep_store st = gcis::build_grammar(t);
    std::string bytes = to_bytes(st);
    auto back = std::get<gcis::nep_store>(from_bytes(bytes));
    CHECK(back.text_len == st.text_len);
    CHECK(back.rules_per_height == st.rules_per_height);
    CHECK(back.rule_starts == st.rule_starts);
    CHECK(back.rhs_concat == st.rhs_concat);
    CHECK(back.exp_lengths == st.exp_lengths);
    CHECK(to_bytes(back) == bytes);
}

TEST_CASE("uni serialization round trip is bit-exact") {
    std::mt19937_64 rng(4);
    std::string t = oracles::random_text(rng, 4000, 4);
    gcis::uni_store st = gcis::uni_store::from_nep(gcis::build_grammar(t));
    std::string bytes = to_bytes(st);
    auto back = std::get<gcis::uni_store>(from_bytes(bytes));
    CHECK(back.delta_bits == st.delta_bits);
    CHECK(back.delta_words == st.delta_words);
    CHECK(back.start_rhs == st.start_rhs);
    std::vector<gcis::sym> a, b;
    for (uint32_t ri = 0; ri < st.rule_count(); ++ri) {
        st.decode_rule(ri, a);
        back.decode_rule(ri, b);
        CHECK(a == b);
        CHECK(st.lengths.get(ri) == back.lengths.get(ri));
    }
    CHECK(to_bytes(back) == bytes);
}

TEST_CASE("decode error taxonomy") {
    gcis::nep_store st = gcis::build_grammar("acabacab");
    std::string bytes = to_bytes(st);

    std::string bad_magic = bytes;
    bad_magic[0] = 'X';
    CHECK(code_of(bad_magic) == gcis::errc::bad_magic);

    std::string bad_version = bytes;
    bad_version[8] = 9;
    CHECK(code_of(bad_version) == gcis::errc::version_mismatch);

    for (size_t cut : {bytes.size() - 1, bytes.size() - 4, bytes.size() / 2, size_t{12}})
        CHECK(code_of(bytes.substr(0, cut)) == gcis::errc::truncated_stream);

    std::string flipped = bytes;
    flipped[bytes.size() - 6] ^= 0x40; // payload byte
    CHECK(code_of(flipped) == gcis::errc::checksum_mismatch);

    gcis::uni_store ust = gcis::uni_store::from_nep(st);
    std::string ubytes = to_bytes(ust);
    std::string uflipped = ubytes;
    uflipped[ubytes.size() / 2] ^= 1;
    gcis::errc c = code_of(uflipped);
    CHECK((c == gcis::errc::checksum_mismatch || c == gcis::errc::truncated_stream));
}

TEST_CASE("save and load through files") {
    std::string t = "abaababaabaababaababa";
    gcis::nep_store nep = gcis::build_grammar(t);
    gcis::uni_store uni = gcis::uni_store::from_nep(nep);
    gcis::save_index("/tmp/gcis_io_test.nep", nep);
    gcis::save_index("/tmp/gcis_io_test.uni", uni);
    auto g1 = gcis::load_index("/tmp/gcis_io_test.nep");
    auto g2 = gcis::load_index("/tmp/gcis_io_test.uni");
    CHECK(std::visit([](const auto& g) { return g.decompress(); }, g1) == t);
    CHECK(std::visit([](const auto& g) { return g.decompress(); }, g2) == t);
    CHECK(g1.index() == 0);
    CHECK(g2.index() == 1);
    CHECK_THROWS_AS(gcis::load_index("/tmp/gcis_io_missing_file"), gcis::error);
}
