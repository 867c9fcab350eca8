#include "gcis/nep_store.hpp"

#include <algorithm>

namespace gcis {

void nep_store::finish() {
    if (rules_per_height.empty() || rules_per_height.back() != 1)
        raise(errc::io, "store: malformed height table");
    height_first.assign(heights() + 1, 0);
    for (uint16_t h = 0; h < heights(); ++h)
        height_first[h + 1] = height_first[h] + rules_per_height[h];
    if (height_first.back() != rule_count() || rule_starts.size() != rule_count() + 1u ||
        rule_starts.front() != 0 || rule_starts.back() != rhs_concat.size())
        raise(errc::io, "store: inconsistent rule table");
    for (uint32_t i = 0; i < rule_count(); ++i)
        if (rule_starts[i] >= rule_starts[i + 1])
            raise(errc::io, "store: empty or misordered rule body");
}

namespace {

// three-way compare of rule body vs s; in prefix mode a body that starts
// with all of s compares equal.
int compare(std::span<const sym> body, std::span<const sym> s, bool prefix_mode) {
    size_t k = std::min(body.size(), s.size());
    for (size_t i = 0; i < k; ++i) {
        if (body[i] != s[i]) return body[i] < s[i] ? -1 : 1;
    }
    if (body.size() < s.size()) return -1;
    if (body.size() == s.size()) return 0;
    return prefix_mode ? 0 : 1;
}

} // namespace

std::optional<sym> nep_store::lookup(std::span<const sym> s, uint16_t height) const {
    if (s.empty()) raise(errc::empty_input, "lookup: empty string");
    auto [lo, hi] = height_range(height);
    while (lo < hi) {
        uint32_t mid = lo + (hi - lo) / 2;
        int c = compare(rhs_of_rule(mid), s, false);
        if (c == 0) return first_nonterminal + mid;
        if (c < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    return std::nullopt;
}

std::pair<sym, sym> nep_store::prefix_candidates(std::span<const sym> s, uint16_t height) const {
    if (s.empty()) raise(errc::empty_input, "prefix_candidates: empty string");
    auto [b, e] = height_range(height);
    uint32_t lo = b, hi = e;
    while (lo < hi) { // first body >= s
        uint32_t mid = lo + (hi - lo) / 2;
        if (compare(rhs_of_rule(mid), s, false) < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    uint32_t lo2 = lo, hi2 = e;
    while (lo2 < hi2) { // first body whose prefix compares above s
        uint32_t mid = lo2 + (hi2 - lo2) / 2;
        if (compare(rhs_of_rule(mid), s, true) <= 0)
            lo2 = mid + 1;
        else
            hi2 = mid;
    }
    return {first_nonterminal + lo, first_nonterminal + lo2};
}

} // namespace gcis
