#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gcis/error.hpp"

// Suffix typing and LMS factorization over symbol strings. This is the one
// parsing primitive shared by the text grammar construction and the pattern
// side: symbols are plain integers (bytes 0..255 at height 0, non-terminal
// ids above), compared by value.
//
// Instead of prepending a sentinel smaller than every symbol, we force a
// factor boundary at position 0. The factor set for positions at or after
// the first S* position is identical; the possibly non-S* first factor is
// exactly the fringe that pattern parsing discards.

namespace gcis {

// symbol ids: bytes 0..255 are characters, non-terminals start at 256
using sym = uint32_t;
inline constexpr sym first_nonterminal = 256;

enum class suffix_type : unsigned char { l_type, s_type, s_star };

// Per-position types, computed right to left; the last position is
// stipulated S. A position is S* when it is S and its predecessor is L.
template <std::integral Sym>
std::vector<suffix_type> classify_types(std::span<const Sym> s) {
    if (s.empty()) raise(errc::empty_input, "classify_types: empty input");
    std::vector<suffix_type> types(s.size(), suffix_type::s_type);
    for (size_t i = s.size() - 1; i-- > 0;) {
        if (s[i] > s[i + 1]) {
            types[i] = suffix_type::l_type;
        } else if (s[i] == s[i + 1]) {
            types[i] = types[i + 1] == suffix_type::l_type ? suffix_type::l_type
                                                           : suffix_type::s_type;
        }
    }
    for (size_t i = s.size(); i-- > 1;) {
        if (types[i] == suffix_type::s_type && types[i - 1] == suffix_type::l_type)
            types[i] = suffix_type::s_star;
    }
    return types;
}

// 0-based factor start positions: position 0 plus every S* position.
// Factor j spans [starts[j], starts[j+1]); the last factor runs to the end.
// Single right-to-left pass, no materialized type array.
template <std::integral Sym>
std::vector<uint32_t> factorize(std::span<const Sym> s) {
    if (s.empty()) raise(errc::empty_input, "factorize: empty input");
    std::vector<uint32_t> starts;
    bool next_is_s = true; // stipulated type of the last position
    for (size_t i = s.size() - 1; i-- > 0;) {
        bool is_s = s[i] < s[i + 1] || (s[i] == s[i + 1] && next_is_s);
        if (!is_s && next_is_s) starts.push_back(static_cast<uint32_t>(i + 1));
        next_is_s = is_s;
    }
    starts.push_back(0);
    std::reverse(starts.begin(), starts.end());
    return starts;
}

// Maximal runs of equal symbols, in order; expanding the runs reproduces s.
template <std::integral Sym>
std::vector<std::pair<Sym, uint32_t>> run_length_encode(std::span<const Sym> s) {
    if (s.empty()) raise(errc::empty_input, "run_length_encode: empty input");
    std::vector<std::pair<Sym, uint32_t>> runs;
    runs.emplace_back(s[0], 1);
    for (size_t i = 1; i < s.size(); ++i) {
        if (s[i] == runs.back().first)
            ++runs.back().second;
        else
            runs.emplace_back(s[i], 1);
    }
    return runs;
}

// Start index of the final run of equal symbols.
template <std::integral Sym>
size_t terminal_run_start(std::span<const Sym> s) {
    size_t i = s.size() - 1;
    while (i > 0 && s[i - 1] == s[i]) --i;
    return i;
}

} // namespace gcis
