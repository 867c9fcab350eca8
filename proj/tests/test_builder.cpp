#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gcis/builder.hpp"
#include "gcis/grammar.hpp"
#include "oracles.hpp"

using gcis::build_options;
using gcis::build_stats;

namespace {

build_options no_heuristic() {
    build_options o;
    o.abort_heuristic = false;
    return o;
}

std::vector<gcis::sym> syms(std::string_view s) {
    std::vector<gcis::sym> v;
    for (char c : s) v.push_back(static_cast<uint8_t>(c));
    return v;
}

// worst case for compression: b ab aab aaab ... a^m b
std::string staircase(unsigned m) {
    std::string t;
    for (unsigned i = 0; i <= m; ++i) {
        t.append(i, 'a');
        t.push_back('b');
    }
    return t;
}

// read the parse tree of `g` left to right at a given height
template <class Store>
std::vector<gcis::sym> level_string(const gcis::grammar<Store>& g, uint16_t height) {
    std::vector<gcis::sym> cur{g.start()};
    for (uint16_t h = g.heights(); h > height; --h) {
        std::vector<gcis::sym> next;
        for (gcis::sym s : cur) {
            auto r = g.rhs(s);
            next.insert(next.end(), r.begin(), r.end());
        }
        cur = std::move(next);
    }
    return cur;
}

} // namespace

TEST_CASE("the worked example grammar") {
    build_stats bs;
    gcis::nep_store nep = gcis::build_grammar("acabacab", no_heuristic(), &bs);
    gcis::grammar g(std::move(nep));

    CHECK(g.heights() == 3);
    CHECK(g.start() == 261);
    CHECK(g.rhs(256) == syms("ab"));
    CHECK(g.rhs(257) == syms("ac"));
    CHECK(g.rhs(258) == std::vector<gcis::sym>{256});
    CHECK(g.rhs(259) == std::vector<gcis::sym>{256, 257});
    CHECK(g.rhs(260) == std::vector<gcis::sym>{257});
    CHECK(g.rhs(261) == std::vector<gcis::sym>{260, 259, 258});

    auto st = g.stats();
    CHECK(st.num_nonterminals == 6);
    CHECK(st.total_rhs_size == 11);
    CHECK(st.start_rhs_len == 3);
    CHECK(st.heights == 3);
    CHECK(st.text_len == 8);

    CHECK(level_string(g, 1) == std::vector<gcis::sym>{257, 256, 257, 256});
    g.validate();
    CHECK(bs.reason == gcis::stop_reason::all_unique);
}

TEST_CASE("single character text") {
    gcis::grammar g(gcis::build_grammar("a"));
    auto st = g.stats();
    CHECK(st.num_nonterminals == 1);
    CHECK(st.start_rhs_len == 1);
    CHECK(st.heights == 1);
    CHECK(g.decompress() == "a");
}

TEST_CASE("empty text is rejected") {
    CHECK_THROWS_AS(gcis::build_grammar(""), gcis::error);
}

TEST_CASE("should_stop formula") {
    build_options on; // heuristic defaults on
    CHECK_FALSE(gcis::should_stop(100, 50, 30, 5, on, 1));
    CHECK(gcis::should_stop(10, 6, 8, 3, on, 1));
    CHECK_FALSE(gcis::should_stop(10, 6, 8, 3, no_heuristic(), 1));
    build_options capped = no_heuristic();
    capped.max_height = 2;
    CHECK(gcis::should_stop(100, 10, 10, 2, capped, 2));
    CHECK_FALSE(gcis::should_stop(100, 10, 10, 2, capped, 1));
}

TEST_CASE("factor ranking is lexicographic on content") {
    // "ab" < "ac"; prefixes precede extensions; "ab" < "b"
    gcis::grammar g(gcis::build_grammar("acabacab", no_heuristic()));
    CHECK(g.store().lookup(syms("ab"), 1) == 256);
    CHECK(g.store().lookup(syms("ac"), 1) == 257);
    std::vector<gcis::sym> r258{256}, r259{256, 257}, r260{257};
    CHECK(g.store().lookup(r258, 2) == 258);
    CHECK(g.store().lookup(r259, 2) == 259);
    CHECK(g.store().lookup(r260, 2) == 260);
}

TEST_CASE("heuristic stops the worked example at the first level") {
    build_stats bs;
    gcis::grammar g(gcis::build_grammar("acabacab", build_options{}, &bs));
    CHECK(bs.reason == gcis::stop_reason::heuristic);
    CHECK(g.heights() == 1);
    CHECK(g.stats().start_rhs_len == 8);
    CHECK(g.decompress() == "acabacab");
}

TEST_CASE("max_height caps the grammar") {
    build_options o = no_heuristic();
    o.max_height = 1;
    build_stats bs;
    gcis::grammar g(gcis::build_grammar("acabacab", o, &bs));
    CHECK(bs.reason == gcis::stop_reason::max_height);
    CHECK(g.heights() == 1);
    CHECK(g.decompress() == "acabacab");
}

TEST_CASE("staircase text does not compress") {
    unsigned m = 200;
    std::string t = staircase(m);
    gcis::grammar g(gcis::build_grammar(t, no_heuristic()));
    auto st = g.stats();
    CHECK(st.total_rhs_size == t.size() + m + 1);
    CHECK(st.heights == 2);
    CHECK(st.num_nonterminals == m + 2);
    CHECK(g.decompress() == t);
}

TEST_CASE("build is deterministic") {
    std::mt19937_64 rng(3);
    std::string t = oracles::random_text(rng, 2000, 4);
    gcis::nep_store a = gcis::build_grammar(t, no_heuristic());
    gcis::nep_store b = gcis::build_grammar(t, no_heuristic());
    CHECK(a.rhs_concat == b.rhs_concat);
    CHECK(a.rule_starts == b.rule_starts);
    CHECK(a.exp_lengths == b.exp_lengths);
    CHECK(a.rules_per_height == b.rules_per_height);
}

TEST_CASE("level strings match the parse tree on random inputs") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        std::string t = oracles::random_text(rng, 50 + rng() % 400, 2 + rng() % 3);
        gcis::grammar g(gcis::build_grammar(t, no_heuristic()));
        // height 0 is the text itself
        auto l0 = level_string(g, 0);
        REQUIRE(l0.size() == t.size());
        for (size_t i = 0; i < t.size(); ++i)
            CHECK(l0[i] == static_cast<uint8_t>(t[i]));
        // every level string refactorizes into exactly the committed rules
        for (uint16_t h = 0; h + 1 < g.heights(); ++h) {
            auto ls = level_string(g, h);
            auto next = level_string(g, static_cast<uint16_t>(h + 1));
            auto starts = gcis::factorize<gcis::sym>(ls);
            REQUIRE(starts.size() == next.size());
            for (size_t j = 0; j < starts.size(); ++j) {
                size_t end = j + 1 < starts.size() ? starts[j + 1] : ls.size();
                std::vector<gcis::sym> factor(ls.begin() + starts[j], ls.begin() + end);
                CHECK(g.rhs(next[j]) == factor);
            }
        }
    }
}

TEST_CASE("structural invariants and height bound on random builds") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        size_t n = 1 + rng() % 3000;
        unsigned sigma = trial % 2 ? 2 : 2 + rng() % 30;
        std::string t = oracles::random_text(rng, n, sigma);
        bool heur = trial % 3 == 0;
        build_options o;
        o.abort_heuristic = heur;
        gcis::grammar g(gcis::build_grammar(t, o));
        g.validate();
        CHECK(g.decompress() == t);
        if (!heur) {
            uint64_t bound = std::bit_width(n); // floor(lg n) + 1
            CHECK(g.heights() <= bound);
        }
    }
}
