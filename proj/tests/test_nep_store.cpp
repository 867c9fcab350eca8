#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gcis/builder.hpp"
#include "gcis/grammar.hpp"
#include "oracles.hpp"

namespace {

gcis::nep_store example_store() {
    gcis::build_options o;
    o.abort_heuristic = false;
    return gcis::build_grammar("acabacab", o);
}

std::vector<gcis::sym> syms(std::string_view s) {
    std::vector<gcis::sym> v;
    for (char c : s) v.push_back(static_cast<uint8_t>(c));
    return v;
}

} // namespace

TEST_CASE("lookup finds rule bodies and rejects strangers") {
    auto st = example_store();
    CHECK(st.lookup(syms("ab"), 1) == 256);
    CHECK(st.lookup(syms("zz"), 1) == std::nullopt);
    CHECK(st.lookup(syms("ab"), 2) == std::nullopt);
    // identity on every rule at its own height
    for (uint16_t h = 1; h <= st.heights(); ++h)
        st.for_each_rule_at_height(h, [&](gcis::sym id, std::span<const gcis::sym> body) {
            CHECK(st.lookup(body, h) == id);
        });
    CHECK_THROWS_AS(st.lookup({}, 1), gcis::error);
    CHECK_THROWS_AS(st.lookup(syms("ab"), 9), gcis::error);
}

TEST_CASE("prefix_candidates ranges") {
    auto st = example_store();
    std::vector<gcis::sym> p{256};
    auto [lo, hi] = st.prefix_candidates(p, 2);
    CHECK(lo == 258);
    CHECK(hi == 260); // 258 -> [256], 259 -> [256,257]
    auto [lo2, hi2] = st.prefix_candidates(syms("b"), 1);
    CHECK(lo2 == hi2);
    // the full body of a rule is a prefix of at least itself
    for (uint16_t h = 1; h <= st.heights(); ++h)
        st.for_each_rule_at_height(h, [&](gcis::sym id, std::span<const gcis::sym> body) {
            auto [a, b] = st.prefix_candidates(body, h);
            CHECK(a <= id);
            CHECK(id < b);
        });
}

TEST_CASE("prefix_candidates equals the brute-force filter") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 25; ++trial) {
        std::string t = oracles::random_text(rng, 100 + rng() % 800, 2 + rng() % 3);
        gcis::build_options o;
        o.abort_heuristic = false;
        auto st = gcis::build_grammar(t, o);
        for (int q = 0; q < 50; ++q) {
            uint16_t h = 1 + rng() % st.heights();
            // probe with slices of existing bodies and random juniors
            std::vector<gcis::sym> probe;
            auto [b, e] = st.height_range(h);
            uint32_t ri = b + rng() % (e - b);
            auto body = st.rhs_of_rule(ri);
            size_t len = 1 + rng() % body.size();
            probe.assign(body.begin(), body.begin() + len);
            if (q % 3 == 0) probe[rng() % probe.size()] += rng() % 3;

            std::vector<gcis::sym> want;
            st.for_each_rule_at_height(h, [&](gcis::sym id, std::span<const gcis::sym> r) {
                if (r.size() >= probe.size() &&
                    std::equal(probe.begin(), probe.end(), r.begin()))
                    want.push_back(id);
            });
            auto [lo, hi] = st.prefix_candidates(probe, h);
            std::vector<gcis::sym> got;
            for (gcis::sym s = lo; s < hi; ++s) got.push_back(s);
            CHECK(got == want);
        }
    }
}

TEST_CASE("store shape of the worked example") {
    auto st = example_store();
    CHECK(st.rule_starts.size() == 7); // 6 rules + sentinel
    CHECK(st.rhs_concat.size() == 11);
    CHECK(st.exp_lengths.size() == 6);
    CHECK(st.start_symbol() == 261);
}
