#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "gcis/nep_store.hpp"

// Grammar construction: iterate the LMS factorization level by level, turn
// each distinct factor into a non-terminal ranked by the lexicographic
// order of its content, and replace factors by their ids until the level
// string has all-unique symbols or at most two factors (or a stop option
// fires). Ids are final as assigned: heights are processed in order and
// within a height the distinct factors are committed in sorted order.

namespace gcis {

struct build_options {
    bool abort_heuristic = true;            // stop when a level would grow the nep size
    std::optional<uint16_t> max_height;     // cap on the number of heights
};

enum class stop_reason : unsigned char { all_unique, few_factors, heuristic, max_height };

struct build_stats {
    stop_reason reason = stop_reason::all_unique;
    uint16_t heights = 0;
};

// True when the level replacing a string of length `level_len` by
// `next_len` symbols plus `new_rules_count` rules of total body size
// `new_rules_size` must not be committed. The 2*count term models the
// per-rule Q and L entries of the nep layout.
inline bool should_stop(uint64_t level_len, uint64_t next_len, uint64_t new_rules_size,
                        uint64_t new_rules_count, const build_options& opts,
                        uint16_t next_height) {
    if (opts.max_height && next_height >= *opts.max_height) return true;
    if (!opts.abort_heuristic) return false;
    return next_len + new_rules_size + 2 * new_rules_count >= level_len;
}

nep_store build_grammar(std::span<const uint8_t> text, const build_options& opts = {},
                        build_stats* stats = nullptr);

inline nep_store build_grammar(std::string_view text, const build_options& opts = {},
                               build_stats* stats = nullptr) {
    return build_grammar(
        std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(text.data()), text.size()),
        opts, stats);
}

} // namespace gcis
