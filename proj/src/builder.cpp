#include "gcis/builder.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "gcis/lms.hpp"

namespace gcis {

namespace {

uint64_t fnv1a(std::span<const sym> s) {
    uint64_t h = 1469598103934665603ull;
    for (sym v : s) {
        h ^= v;
        h *= 1099511628211ull;
    }
    return h;
}

struct level_result {
    std::vector<sym> next;                  // T^(h+1) as dense (unranked) indices
    std::vector<std::vector<sym>> contents; // distinct factor contents, insertion order
    uint64_t factors = 0;
};

// One LMS level in a single right-to-left pass: factor boundaries are
// discovered from the on-the-fly type of each position, and every factor
// is interned through a content hash while the replacement string is
// filled back to front.
template <class SymT>
level_result parse_level(std::span<const SymT> s) {
    level_result res;
    res.next.reserve(s.size() / 2 + 1);
    std::unordered_map<uint64_t, std::vector<uint32_t>> buckets;
    std::vector<sym> scratch;

    auto intern = [&](size_t begin, size_t end) {
        scratch.assign(s.begin() + begin, s.begin() + end);
        uint64_t h = fnv1a(scratch);
        auto& cands = buckets[h];
        for (uint32_t idx : cands) {
            if (res.contents[idx] == scratch) {
                res.next.push_back(idx);
                return;
            }
        }
        uint32_t idx = static_cast<uint32_t>(res.contents.size());
        res.contents.push_back(scratch);
        cands.push_back(idx);
        res.next.push_back(idx);
    };

    size_t factor_end = s.size();
    bool next_is_s = true;
    for (size_t i = s.size() - 1; i-- > 0;) {
        bool is_s = s[i] < s[i + 1] || (s[i] == s[i + 1] && next_is_s);
        if (!is_s && next_is_s) {
            intern(i + 1, factor_end);
            factor_end = i + 1;
        }
        next_is_s = is_s;
    }
    intern(0, factor_end);
    std::reverse(res.next.begin(), res.next.end());
    res.factors = res.next.size();
    return res;
}

bool all_unique(std::span<const sym> s, uint64_t distinct_bound) {
    if (s.size() > distinct_bound) return false;
    std::unordered_set<sym> seen;
    seen.reserve(s.size() * 2);
    for (sym v : s)
        if (!seen.insert(v).second) return false;
    return true;
}

} // namespace

nep_store build_grammar(std::span<const uint8_t> text, const build_options& opts,
                        build_stats* stats) {
    if (text.empty()) raise(errc::empty_input, "build: empty text");
    if (text.size() >= (uint64_t{1} << 32))
        raise(errc::overflow, "build: text too long for 32-bit symbol ids");

    nep_store store;
    store.text_len = text.size();

    std::vector<sym> cur;
    stop_reason reason = stop_reason::all_unique;
    uint16_t h = 0;

    auto exp_of = [&](sym v) { return v < first_nonterminal ? 1 : store.exp_lengths[v - first_nonterminal]; };

    while (true) {
        uint64_t distinct_bound =
            h == 0 ? 256 : store.rules_per_height[h - 1];
        std::span<const sym> level =
            h == 0 ? std::span<const sym>{} : std::span<const sym>(cur);

        if (h > 0 && all_unique(level, distinct_bound)) {
            reason = stop_reason::all_unique;
            break;
        }
        if (h == 0 && text.size() <= 256) {
            std::unordered_set<uint8_t> seen(text.begin(), text.end());
            if (seen.size() == text.size()) {
                reason = stop_reason::all_unique;
                cur.assign(text.begin(), text.end());
                break;
            }
        }

        level_result lv = h == 0 ? parse_level<uint8_t>(text) : parse_level<sym>(level);
        if (lv.factors <= 2) {
            reason = stop_reason::few_factors;
            if (h == 0) cur.assign(text.begin(), text.end());
            break;
        }

        uint64_t new_rules_size = 0;
        for (const auto& c : lv.contents) new_rules_size += c.size();
        uint64_t level_len = h == 0 ? text.size() : cur.size();
        if (should_stop(level_len, lv.factors, new_rules_size, lv.contents.size(), opts,
                        static_cast<uint16_t>(h + 1))) {
            reason = opts.max_height && h + 1 >= *opts.max_height ? stop_reason::max_height
                                                                  : stop_reason::heuristic;
            if (h == 0) cur.assign(text.begin(), text.end());
            break;
        }

        // commit: rank distinct factors lexicographically, assign final ids
        uint64_t base = first_nonterminal + store.rule_count();
        if (base + lv.contents.size() >= (uint64_t{1} << 32))
            raise(errc::overflow, "build: symbol space exceeds 32 bits");
        std::vector<uint32_t> order(lv.contents.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
            return lv.contents[a] < lv.contents[b];
        });
        std::vector<sym> rank(lv.contents.size());
        for (uint32_t r = 0; r < order.size(); ++r) {
            rank[order[r]] = static_cast<sym>(base + r);
            const auto& body = lv.contents[order[r]];
            uint64_t len = 0;
            for (sym c : body) len += exp_of(c);
            store.rule_starts.push_back(store.rhs_concat.size() + body.size());
            store.rhs_concat.insert(store.rhs_concat.end(), body.begin(), body.end());
            store.exp_lengths.push_back(len);
        }
        store.rules_per_height.push_back(static_cast<uint32_t>(lv.contents.size()));

        std::vector<sym> next(lv.next.size());
        for (size_t i = 0; i < lv.next.size(); ++i) next[i] = rank[lv.next[i]];
        cur = std::move(next);
        ++h;
    }

    // start rule: the final level string
    store.rule_starts.push_back(store.rhs_concat.size() + cur.size());
    store.rhs_concat.insert(store.rhs_concat.end(), cur.begin(), cur.end());
    uint64_t total = 0;
    for (sym c : cur) total += exp_of(c);
    store.exp_lengths.push_back(total);
    store.rules_per_height.push_back(1);

    // rule_starts currently holds end offsets; prepend the leading zero
    store.rule_starts.insert(store.rule_starts.begin(), 0);
    store.finish();

    if (stats) {
        stats->reason = reason;
        stats->heights = store.heights();
    }
    return store;
}

} // namespace gcis
