#pragma once

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "gcis/grammar.hpp"
#include "gcis/lms.hpp"

// locate/count: parse the pattern with non-terminals borrowed from the text
// grammar, split its top-level string into C_p C C_s, find every occurrence
// of the core C inside the rule bodies one height up, then climb the DAG
// from each occurrence until the expansion is large enough to hold the
// whole pattern window and verify that window character-wise.

namespace gcis {

struct locate_options {
    // when the core sits at a factor boundary its extensible occurrences
    // are rule-body prefixes, found by binary search instead of a scan
    bool prefix_fast_path = false;
    // re-extract every reported position and compare against the pattern
    bool verify_positions = false;
};

struct parsed_pattern {
    std::vector<sym> top;        // the pattern's final level string
    uint16_t height = 0;         // height of the symbols in top
    uint64_t prefix_chars = 0;   // characters expanded by discarded fringes, left
    uint64_t suffix_chars = 0;   // same, right
};

struct core_split {
    std::vector<sym> prefix, core, suffix; // C_p, C, C_s
    uint16_t height = 0;                   // height of the core symbols
    uint64_t prefix_chars = 0;             // all characters left of the core
    uint64_t suffix_chars = 0;
    bool fallback = false;                 // single-character core
    bool anchored = false;                 // extensible occurrences are body prefixes
};

struct core_occurrence {
    sym rule;       // rule of height core.height + 1 containing the core
    uint32_t index; // 0-based symbol index where the core starts in its body
};

struct locate_report {
    std::vector<uint64_t> positions; // sorted 1-based starting positions
    uint64_t occ = 0;
    uint64_t core_hits = 0;      // occurrences of C in rule bodies (occ_C)
    uint64_t visited_nodes = 0;  // climb states expanded (occ_C')
    uint16_t pattern_height = 0; // tau_P
    bool fallback = false;
    bool aborted_parse = false; // an inner factor had no rule: no occurrence
    uint64_t parse_us = 0;
    uint64_t total_us = 0;
};

namespace detail {

inline std::vector<sym> widen(std::string_view pat) {
    std::vector<sym> v(pat.size());
    for (size_t i = 0; i < pat.size(); ++i) v[i] = static_cast<uint8_t>(pat[i]);
    return v;
}

// all (start) positions of needle inside hay, overlapping included (KMP)
inline void kmp_find(std::span<const sym> hay, std::span<const sym> needle,
                     std::span<const uint32_t> lps, auto&& on_match) {
    size_t i = 0, j = 0;
    while (i < hay.size()) {
        if (hay[i] == needle[j]) {
            ++i, ++j;
            if (j == needle.size()) {
                on_match(static_cast<uint32_t>(i - j));
                j = lps[j - 1];
            }
        } else if (j > 0) {
            j = lps[j - 1];
        } else {
            ++i;
        }
    }
}

inline std::vector<uint32_t> kmp_lps(std::span<const sym> needle) {
    std::vector<uint32_t> lps(needle.size(), 0);
    for (size_t i = 1, len = 0; i < needle.size();) {
        if (needle[i] == needle[len]) {
            lps[i++] = static_cast<uint32_t>(++len);
        } else if (len > 0) {
            len = lps[len - 1];
        } else {
            lps[i++] = 0;
        }
    }
    return lps;
}

struct climb_state {
    sym node;
    int64_t window; // pattern window start relative to the node's expansion
    bool operator==(const climb_state&) const = default;
};

struct climb_state_hash {
    size_t operator()(const climb_state& s) const {
        uint64_t x = (uint64_t(s.node) << 1) ^ (uint64_t(s.window) * 0x9e3779b97f4a7c15ull);
        x ^= x >> 33;
        return static_cast<size_t>(x * 0xff51afd7ed558ccdull);
    }
};

} // namespace detail

// Parse the pattern bottom-up, borrowing ids from the text grammar for the
// stable inner factors of each level. The first factor is always a fringe;
// on the right everything from the last factor boundary known to survive in
// any context is a fringe. A boundary survives unless it sits at the start
// of the terminal run of equal symbols, whose types depend on what follows
// the pattern in the text. Returns nothing when an inner factor has no rule
// in the text grammar, which proves the pattern does not occur.
template <class Store>
std::optional<parsed_pattern> parse_pattern(const grammar<Store>& g, std::string_view pat) {
    if (pat.empty()) raise(errc::empty_input, "parse_pattern: empty pattern");
    parsed_pattern pp;
    pp.top = detail::widen(pat);
    while (pp.height + 1u < g.heights()) {
        std::span<const sym> cur(pp.top);
        std::vector<uint32_t> starts = factorize(cur);
        size_t z = starts.size();
        if (z <= 2) break;
        size_t rs = terminal_run_start(cur);
        // factors j in [1, z-2] whose end boundary lies before the terminal run
        size_t jmax = 0;
        for (size_t j = 1; j + 1 < z; ++j) {
            if (starts[j + 1] < rs)
                jmax = j;
            else
                break;
        }
        if (jmax < 1) break;
        std::vector<sym> next;
        next.reserve(jmax);
        for (size_t j = 1; j <= jmax; ++j) {
            std::span<const sym> f = cur.subspan(starts[j], starts[j + 1] - starts[j]);
            auto id = g.store().lookup(f, pp.height + 1);
            if (!id) return std::nullopt;
            next.push_back(*id);
        }
        for (size_t i = 0; i < starts[1]; ++i) pp.prefix_chars += g.expansion_length(cur[i]);
        for (size_t i = starts[jmax + 1]; i < cur.size(); ++i)
            pp.suffix_chars += g.expansion_length(cur[i]);
        pp.top = std::move(next);
        ++pp.height;
    }
    return pp;
}

// Split the top string into C_p C C_s: the first factor is discarded when
// there are at least two factors, and the terminal run is discarded when
// its symbol is smaller than its predecessor (only then can an appended
// context turn the run's start into a new factor boundary). An empty core
// falls back to the rarest pattern character, which is always a core.
template <class Store>
core_split choose_core(const grammar<Store>& g, const parsed_pattern& pp, std::string_view pat) {
    core_split cs;
    cs.height = pp.height;
    cs.prefix_chars = pp.prefix_chars;
    cs.suffix_chars = pp.suffix_chars;
    std::span<const sym> top(pp.top);
    std::vector<uint32_t> starts = factorize(top);
    size_t z = starts.size();
    size_t rs = terminal_run_start(top);
    bool decreasing = rs > 0 && top[rs] < top[rs - 1];
    size_t core_end = decreasing ? rs : top.size();
    size_t core_begin = z >= 2 ? starts[1] : 0;
    if (core_begin < core_end) {
        cs.prefix.assign(top.begin(), top.begin() + core_begin);
        cs.core.assign(top.begin() + core_begin, top.begin() + core_end);
        cs.suffix.assign(top.begin() + core_end, top.end());
        for (sym s : cs.prefix) cs.prefix_chars += g.expansion_length(s);
        for (sym s : cs.suffix) cs.suffix_chars += g.expansion_length(s);
        cs.anchored = z >= 2 && pp.height + 1u < g.heights();
        return cs;
    }
    // fallback: the pattern character occurring least often in the
    // height-1 rule bodies, ties broken by the leftmost position
    const auto& freq = g.height1_char_freq();
    size_t best = 0;
    for (size_t i = 1; i < pat.size(); ++i)
        if (freq[static_cast<uint8_t>(pat[i])] < freq[static_cast<uint8_t>(pat[best])]) best = i;
    cs.fallback = true;
    cs.height = 0;
    cs.core.assign(1, static_cast<uint8_t>(pat[best]));
    cs.prefix = detail::widen(pat.substr(0, best));
    cs.suffix = detail::widen(pat.substr(best + 1));
    cs.prefix_chars = best;
    cs.suffix_chars = pat.size() - 1 - best;
    return cs;
}

// All occurrences of the core inside rule bodies one height up, by a linear
// scan with KMP; with the fast path on and an anchored core, a binary
// search for bodies having the core as a prefix replaces the scan.
template <class Store>
std::vector<core_occurrence> find_core_occurrences(const grammar<Store>& g, const core_split& cs,
                                                   bool prefix_fast_path = false) {
    std::vector<core_occurrence> out;
    uint16_t scan_height = cs.height + 1;
    if (prefix_fast_path && cs.anchored) {
        auto [lo, hi] = g.store().prefix_candidates(cs.core, scan_height);
        for (sym s = lo; s < hi; ++s) out.push_back({s, 0});
        return out;
    }
    std::vector<uint32_t> lps = detail::kmp_lps(cs.core);
    g.store().for_each_rule_at_height(scan_height, [&](sym id, std::span<const sym> body) {
        if (body.size() < cs.core.size()) return;
        detail::kmp_find(body, cs.core, lps, [&](uint32_t at) { out.push_back({id, at}); });
    });
    return out;
}

// Climb from every core occurrence to the lowest ancestors whose expansion
// can hold the whole pattern window, verify each distinct (node, window)
// once by extraction, and emit one text position per parse-tree occurrence
// of each verified node.
template <class Store>
void verify_and_collect(const grammar<Store>& g, std::span<const core_occurrence> occs,
                        const core_split& cs, std::string_view pat, locate_report& rep) {
    const int64_t m = static_cast<int64_t>(pat.size());
    std::unordered_set<detail::climb_state, detail::climb_state_hash> visited;
    std::vector<detail::climb_state> stack, fitting;
    for (const core_occurrence& occ : occs) {
        int64_t c0 = static_cast<int64_t>(g.left_extent(occ.rule, occ.index));
        stack.push_back({occ.rule, c0 - static_cast<int64_t>(cs.prefix_chars)});
    }
    while (!stack.empty()) {
        detail::climb_state st = stack.back();
        stack.pop_back();
        if (!visited.insert(st).second) continue;
        ++rep.visited_nodes;
        if (st.window >= 0 &&
            st.window + m <= static_cast<int64_t>(g.expansion_length(st.node))) {
            fitting.push_back(st);
            continue;
        }
        if (st.node == g.start()) continue; // window overflows the text
        for (const auto& e : g.parents(st.node))
            stack.push_back({e.parent, st.window + static_cast<int64_t>(
                                                       g.left_extent(e.parent, e.index))});
    }
    std::string window;
    for (const detail::climb_state& st : fitting) {
        window.clear();
        window = g.extract(st.node, static_cast<uint64_t>(st.window) + 1, pat.size());
        if (window != pat) continue;
        for (uint64_t origin : g.occurrences_in_text(st.node))
            rep.positions.push_back(origin + static_cast<uint64_t>(st.window));
    }
}

template <class Store>
locate_report locate(const grammar<Store>& g, std::string_view pat,
                     const locate_options& opts = {}) {
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    locate_report rep;
    if (pat.empty()) raise(errc::empty_input, "locate: empty pattern");
    auto pp = parse_pattern(g, pat);
    auto t1 = clock::now();
    rep.parse_us = std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();
    if (!pp) {
        rep.aborted_parse = true;
        rep.total_us = rep.parse_us;
        return rep;
    }
    rep.pattern_height = pp->height;
    core_split cs = choose_core(g, *pp, pat);
    rep.fallback = cs.fallback;
    std::vector<core_occurrence> occs = find_core_occurrences(g, cs, opts.prefix_fast_path);
    rep.core_hits = occs.size();
    verify_and_collect(g, occs, cs, pat, rep);
    std::sort(rep.positions.begin(), rep.positions.end());
    assert(std::adjacent_find(rep.positions.begin(), rep.positions.end()) ==
           rep.positions.end());
    rep.positions.erase(std::unique(rep.positions.begin(), rep.positions.end()),
                        rep.positions.end());
    rep.occ = rep.positions.size();
    if (opts.verify_positions) {
        for (uint64_t p : rep.positions)
            if (g.extract_text(p, pat.size()) != pat)
                raise(errc::io, "locate: reported position fails verification");
    }
    rep.total_us =
        std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - t0).count();
    return rep;
}

template <class Store>
uint64_t count(const grammar<Store>& g, std::string_view pat, const locate_options& opts = {}) {
    return locate(g, pat, opts).occ;
}

} // namespace gcis
