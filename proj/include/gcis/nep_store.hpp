#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gcis/error.hpp"
#include "gcis/lms.hpp"

// GCIS-nep: the plain physical rule representation. Every symbol is a
// 32-bit integer. The right-hand sides of all non-terminals, ordered by
// (height, lexicographic), are concatenated without delimiters into R;
// Q[i] gives the start of rule i in R (plus one sentinel end offset) and
// L[i] its expansion length in characters. Within a height the rule bodies
// are strictly increasing, so lookup is a binary search on Q.

namespace gcis {

struct nep_store {
    uint64_t text_len = 0;
    std::vector<uint32_t> rules_per_height; // heights 1..tau; last entry is the start rule
    std::vector<uint64_t> rule_starts;      // Q: rule_count()+1 offsets into rhs_concat
    std::vector<sym> rhs_concat;            // R: g symbols
    std::vector<uint64_t> exp_lengths;      // L: per-rule expansion length

    // derived, rebuilt by finish()
    std::vector<uint32_t> height_first; // first rule index of each height, plus end sentinel

    uint32_t rule_count() const { return static_cast<uint32_t>(exp_lengths.size()); }
    uint16_t heights() const { return static_cast<uint16_t>(rules_per_height.size()); }
    uint64_t total_rhs_size() const { return rhs_concat.size(); }
    sym start_symbol() const { return first_nonterminal + rule_count() - 1; }

    bool is_rule(sym s) const {
        return s >= first_nonterminal && s < first_nonterminal + rule_count();
    }
    uint32_t rule_index(sym s) const {
        if (!is_rule(s)) raise(errc::unknown_symbol, "not a non-terminal of this grammar");
        return s - first_nonterminal;
    }

    std::span<const sym> rhs_of_rule(uint32_t ri) const {
        return {rhs_concat.data() + rule_starts[ri],
                rhs_concat.data() + rule_starts[ri + 1]};
    }

    // decode interface shared with uni_store
    void decode_rule(uint32_t ri, std::vector<sym>& out) const {
        auto r = rhs_of_rule(ri);
        out.assign(r.begin(), r.end());
    }

    uint64_t expansion_of(sym s) const {
        if (s < first_nonterminal) return 1;
        return exp_lengths[rule_index(s)];
    }

    // rule index range [begin, end) of one height (1-based heights)
    std::pair<uint32_t, uint32_t> height_range(uint16_t height) const {
        if (height < 1 || height > heights())
            raise(errc::out_of_range, "height out of range");
        return {height_first[height - 1], height_first[height]};
    }

    template <class F>
    void for_each_rule_at_height(uint16_t height, F&& f) const {
        auto [b, e] = height_range(height);
        for (uint32_t ri = b; ri < e; ++ri)
            f(static_cast<sym>(first_nonterminal + ri), rhs_of_rule(ri));
    }

    // id of the rule at `height` whose body equals s, if any
    std::optional<sym> lookup(std::span<const sym> s, uint16_t height) const;

    // [lo, hi) of symbol ids at `height` whose bodies have s as a prefix
    std::pair<sym, sym> prefix_candidates(std::span<const sym> s, uint16_t height) const;

    void finish(); // rebuild height_first, check basic shape
};

} // namespace gcis
