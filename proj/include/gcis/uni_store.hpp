#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gcis/bitio.hpp"
#include "gcis/elias_fano.hpp"
#include "gcis/nep_store.hpp"

// GCIS-uni: the universally coded rule representation. The first symbol of
// every rule body forms an ascending sequence and is kept in Elias-Fano
// (F), as are the bit offsets of the per-rule delta streams (Q). A factor
// rule's body is bitonic — a non-decreasing prefix of length ell followed
// by a non-increasing tail — so the body is stored as gamma(ell) followed
// by gamma(|gap|+1) for each adjacent pair, decoded by adding gaps up to
// position ell and subtracting after it. Expansion lengths live in three
// tiers of 8-, 16- and 32-bit entries.
//
// The start rule is the final level string and is not bitonic in general,
// so its body is kept verbatim; its Q slot is empty.

namespace gcis {

struct tiered_lengths {
    uint64_t end8 = 0, end16 = 0; // logical indices where the 8- and 16-bit tiers end
    std::vector<uint8_t> v8;
    std::vector<uint16_t> v16;
    std::vector<uint32_t> v32;

    static tiered_lengths build(std::span<const uint64_t> values) {
        tiered_lengths t;
        int tier = 0;
        for (uint64_t v : values) {
            if (v >= (uint64_t{1} << 32))
                raise(errc::overflow, "expansion length exceeds 32 bits");
            if (tier == 0 && v >= 256) tier = v >= (uint64_t{1} << 16) ? 2 : 1;
            else if (tier == 1 && v >= (uint64_t{1} << 16)) tier = 2;
            switch (tier) {
            case 0: t.v8.push_back(static_cast<uint8_t>(v)); break;
            case 1: t.v16.push_back(static_cast<uint16_t>(v)); break;
            default: t.v32.push_back(static_cast<uint32_t>(v)); break;
            }
        }
        t.end8 = t.v8.size();
        t.end16 = t.end8 + t.v16.size();
        return t;
    }

    uint64_t get(uint64_t i) const {
        if (i < end8) return v8[i];
        if (i < end16) return v16[i - end8];
        return v32[i - end16];
    }

    uint64_t size() const { return end16 + v32.size(); }
};

// length of the maximal non-decreasing prefix; the rest must be
// non-increasing, otherwise the body is rejected
uint64_t encode_rule(bit_writer& w, std::span<const sym> rhs);

void decode_rule_bits(bit_reader& r, uint64_t end_bit, sym first, std::vector<sym>& out);

struct uni_store {
    uint64_t text_len = 0;
    std::vector<uint32_t> rules_per_height;
    elias_fano first_symbols;  // F, one entry per rule
    elias_fano delta_offsets;  // Q, rule_count()+1 bit offsets; start slot is empty
    std::vector<uint64_t> delta_words;
    uint64_t delta_bits = 0;
    tiered_lengths lengths;    // L
    std::vector<sym> start_rhs;

    std::vector<uint32_t> height_first; // derived

    static uni_store from_nep(const nep_store& nep);

    uint32_t rule_count() const { return static_cast<uint32_t>(lengths.size()); }
    uint16_t heights() const { return static_cast<uint16_t>(rules_per_height.size()); }
    uint64_t total_rhs_size() const;
    sym start_symbol() const { return first_nonterminal + rule_count() - 1; }

    bool is_rule(sym s) const {
        return s >= first_nonterminal && s < first_nonterminal + rule_count();
    }
    uint32_t rule_index(sym s) const {
        if (!is_rule(s)) raise(errc::unknown_symbol, "not a non-terminal of this grammar");
        return s - first_nonterminal;
    }

    void decode_rule(uint32_t ri, std::vector<sym>& out) const;

    uint64_t expansion_of(sym s) const {
        if (s < first_nonterminal) return 1;
        if (!is_rule(s)) raise(errc::unknown_symbol, "not a non-terminal of this grammar");
        return lengths.get(s - first_nonterminal);
    }

    std::pair<uint32_t, uint32_t> height_range(uint16_t height) const {
        if (height < 1 || height > heights())
            raise(errc::out_of_range, "height out of range");
        return {height_first[height - 1], height_first[height]};
    }

    template <class F>
    void for_each_rule_at_height(uint16_t height, F&& f) const {
        auto [b, e] = height_range(height);
        std::vector<sym> scratch;
        for (uint32_t ri = b; ri < e; ++ri) {
            decode_rule(ri, scratch);
            f(static_cast<sym>(first_nonterminal + ri), std::span<const sym>(scratch));
        }
    }

    std::optional<sym> lookup(std::span<const sym> s, uint16_t height) const;
    std::pair<sym, sym> prefix_candidates(std::span<const sym> s, uint16_t height) const;

    void finish();

private:
    // -1/0/+1 of rule body vs s, decoding only as many symbols as needed
    int compare_rule(uint32_t ri, std::span<const sym> s, bool prefix_mode) const;
};

} // namespace gcis
