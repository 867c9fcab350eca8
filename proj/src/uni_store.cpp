#include "gcis/uni_store.hpp"

#include <algorithm>

namespace gcis {

uint64_t encode_rule(bit_writer& w, std::span<const sym> rhs) {
    if (rhs.empty()) raise(errc::empty_input, "encode_rule: empty body");
    size_t ell = 1;
    while (ell < rhs.size() && rhs[ell - 1] <= rhs[ell]) ++ell;
    for (size_t k = ell; k + 1 <= rhs.size() - 1; ++k)
        if (rhs[k] < rhs[k + 1])
            raise(errc::not_bitonic, "encode_rule: body is not bitonic");
    gamma_encode(w, ell);
    for (size_t k = 1; k < rhs.size(); ++k) {
        uint64_t gap = rhs[k] > rhs[k - 1] ? rhs[k] - rhs[k - 1] : rhs[k - 1] - rhs[k];
        gamma_encode(w, gap + 1); // +1: gamma cannot code a zero gap
    }
    return ell;
}

void decode_rule_bits(bit_reader& r, uint64_t end_bit, sym first, std::vector<sym>& out) {
    out.clear();
    uint64_t ell = gamma_decode(r);
    out.push_back(first);
    uint64_t cur = first;
    while (r.tell() < end_bit) {
        uint64_t gap = gamma_decode(r) - 1;
        cur = out.size() < ell ? cur + gap : cur - gap;
        out.push_back(static_cast<sym>(cur));
    }
}

uni_store uni_store::from_nep(const nep_store& nep) {
    uni_store u;
    u.text_len = nep.text_len;
    u.rules_per_height = nep.rules_per_height;

    uint32_t rules = nep.rule_count();
    std::vector<uint64_t> firsts(rules), offsets;
    offsets.reserve(rules + 1);
    bit_writer delta;
    for (uint32_t ri = 0; ri < rules; ++ri) {
        auto body = nep.rhs_of_rule(ri);
        firsts[ri] = body.front();
        if (ri + 1 < rules) {
            offsets.push_back(delta.bit_size());
            encode_rule(delta, body);
        } else {
            u.start_rhs.assign(body.begin(), body.end());
            offsets.push_back(delta.bit_size()); // empty slot
        }
    }
    offsets.push_back(delta.bit_size());
    u.delta_bits = delta.bit_size();
    u.delta_words = delta.take_words();
    u.first_symbols = elias_fano::from_values(firsts);
    u.delta_offsets = elias_fano::from_values(offsets);
    u.lengths = tiered_lengths::build(nep.exp_lengths);
    u.finish();
    return u;
}

void uni_store::finish() {
    if (rules_per_height.empty() || rules_per_height.back() != 1)
        raise(errc::io, "store: malformed height table");
    height_first.assign(heights() + 1, 0);
    for (uint16_t h = 0; h < heights(); ++h)
        height_first[h + 1] = height_first[h] + rules_per_height[h];
    if (height_first.back() != rule_count() ||
        first_symbols.size() != rule_count() ||
        delta_offsets.size() != rule_count() + 1u || start_rhs.empty())
        raise(errc::io, "store: inconsistent rule table");
}

void uni_store::decode_rule(uint32_t ri, std::vector<sym>& out) const {
    if (ri + 1 == rule_count()) {
        out.assign(start_rhs.begin(), start_rhs.end());
        return;
    }
    uint64_t begin = delta_offsets.at(ri), end = delta_offsets.at(ri + 1);
    bit_reader r(delta_words, delta_bits, begin);
    decode_rule_bits(r, end, static_cast<sym>(first_symbols.at(ri)), out);
}

uint64_t uni_store::total_rhs_size() const {
    uint64_t total = start_rhs.size();
    std::vector<sym> scratch;
    for (uint32_t ri = 0; ri + 1 < rule_count(); ++ri) {
        decode_rule(ri, scratch);
        total += scratch.size();
    }
    return total;
}

int uni_store::compare_rule(uint32_t ri, std::span<const sym> s, bool prefix_mode) const {
    if (ri + 1 == rule_count()) {
        size_t k = std::min(start_rhs.size(), s.size());
        for (size_t i = 0; i < k; ++i)
            if (start_rhs[i] != s[i]) return start_rhs[i] < s[i] ? -1 : 1;
        if (start_rhs.size() < s.size()) return -1;
        if (start_rhs.size() == s.size()) return 0;
        return prefix_mode ? 0 : 1;
    }
    uint64_t begin = delta_offsets.at(ri), end = delta_offsets.at(ri + 1);
    bit_reader r(delta_words, delta_bits, begin);
    uint64_t ell = gamma_decode(r);
    uint64_t cur = first_symbols.at(ri);
    size_t produced = 1;
    size_t i = 0;
    while (true) {
        if (i < s.size()) {
            if (cur != s[i]) return cur < s[i] ? -1 : 1;
            ++i;
        } else {
            return prefix_mode ? 0 : 1; // body extends past s
        }
        if (r.tell() >= end) break;
        uint64_t gap = gamma_decode(r) - 1;
        cur = produced < ell ? cur + gap : cur - gap;
        ++produced;
    }
    return i == s.size() ? 0 : -1; // body exhausted
}

std::optional<sym> uni_store::lookup(std::span<const sym> s, uint16_t height) const {
    if (s.empty()) raise(errc::empty_input, "lookup: empty string");
    auto [lo, hi] = height_range(height);
    while (lo < hi) {
        uint32_t mid = lo + (hi - lo) / 2;
        int c = compare_rule(mid, s, false);
        if (c == 0) return first_nonterminal + mid;
        if (c < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    return std::nullopt;
}

std::pair<sym, sym> uni_store::prefix_candidates(std::span<const sym> s, uint16_t height) const {
    if (s.empty()) raise(errc::empty_input, "prefix_candidates: empty string");
    auto [b, e] = height_range(height);
    uint32_t lo = b, hi = e;
    while (lo < hi) {
        uint32_t mid = lo + (hi - lo) / 2;
        if (compare_rule(mid, s, false) < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    uint32_t lo2 = lo, hi2 = e;
    while (lo2 < hi2) {
        uint32_t mid = lo2 + (hi2 - lo2) / 2;
        if (compare_rule(mid, s, true) <= 0)
            lo2 = mid + 1;
        else
            hi2 = mid;
    }
    return {first_nonterminal + lo, first_nonterminal + lo2};
}

} // namespace gcis
