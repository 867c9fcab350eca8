#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gcis/error.hpp"
#include "gcis/lms.hpp"
#include "gcis/nep_store.hpp"
#include "gcis/uni_store.hpp"

// Logical view of a GCIS grammar on top of a physical rule store: symbol
// heights, expansions, extraction, reverse (parent) edges for climbing the
// DAG, and statistics. Immutable after construction; all queries are
// read-only and safe to run concurrently.

namespace gcis {

struct grammar_stats {
    uint64_t num_nonterminals = 0;
    uint64_t total_rhs_size = 0;
    uint64_t start_rhs_len = 0;
    uint64_t heights = 0;
    uint64_t text_len = 0;
};

template <class Store>
class grammar {
public:
    struct parent_edge {
        sym parent;
        uint32_t index; // 0-based position of the child inside parent's body
    };

    explicit grammar(Store store) : store_(std::move(store)) { build_derived(); }

    const Store& store() const { return store_; }
    uint64_t text_len() const { return store_.text_len; }
    uint16_t heights() const { return store_.heights(); }
    sym start() const { return store_.start_symbol(); }
    uint32_t rule_count() const { return store_.rule_count(); }
    uint32_t alphabet_size() const { return alphabet_size_; }
    const std::array<uint64_t, 256>& height1_char_freq() const { return h1_char_freq_; }

    uint16_t height_of(sym s) const {
        if (s < first_nonterminal) return 0;
        uint32_t ri = store_.rule_index(s);
        uint16_t h = 1;
        while (store_.height_first[h] <= ri) ++h;
        return h;
    }

    uint64_t expansion_length(sym s) const { return store_.expansion_of(s); }

    std::vector<sym> rhs(sym s) const {
        if (s < first_nonterminal) return {s};
        std::vector<sym> out;
        store_.decode_rule(store_.rule_index(s), out);
        return out;
    }

    // characters from..from+len-1 (1-based) of the expansion of s
    std::string extract(sym s, uint64_t from, uint64_t len) const {
        uint64_t total = expansion_length(s);
        if (from < 1 || from + len - 1 > total)
            raise(errc::out_of_range, "extract: window outside expansion");
        std::string out;
        out.reserve(len);
        extract_into(s, from - 1, len, out);
        return out;
    }

    std::string extract_text(uint64_t from, uint64_t len) const { return extract(start(), from, len); }

    std::string decompress() const { return extract(start(), 1, text_len()); }

    // 1-based text positions of every parse-tree occurrence of s, unsorted
    std::vector<uint64_t> occurrences_in_text(sym s) const {
        if (s >= first_nonterminal) store_.rule_index(s); // validate id
        std::vector<uint64_t> out;
        climb_collect(s, 0, out);
        return out;
    }

    std::span<const parent_edge> parents(sym s) const {
        return {parent_edges_.data() + parent_begin_[s],
                parent_edges_.data() + parent_begin_[s + 1]};
    }

    // sum of expansion lengths of the children left of `index` in parent's
    // body; long bodies answer from the derived prefix-sum cache
    uint64_t left_extent(sym parent, uint32_t index) const {
        uint32_t ri = store_.rule_index(parent);
        if (prefix_at_[ri]) return prefix_pool_[prefix_at_[ri] - 1 + index];
        std::vector<sym> body;
        store_.decode_rule(ri, body);
        uint64_t total = 0;
        for (uint32_t i = 0; i < index; ++i) total += expansion_length(body[i]);
        return total;
    }

    grammar_stats stats() const {
        grammar_stats st;
        st.num_nonterminals = rule_count();
        st.total_rhs_size = store_.total_rhs_size();
        st.start_rhs_len = rhs(start()).size();
        st.heights = heights();
        st.text_len = text_len();
        return st;
    }

    // structural invariant battery; throws on the first violation
    void validate() const;

private:
    void build_derived() {
        uint32_t rules = store_.rule_count();
        size_t symbols = size_t{first_nonterminal} + rules;
        std::vector<uint32_t> counts(symbols + 1, 0);
        std::vector<sym> body;
        for (uint32_t ri = 0; ri < rules; ++ri) {
            store_.decode_rule(ri, body);
            for (sym c : body) ++counts[c + 1];
        }
        parent_begin_.assign(symbols + 1, 0);
        for (size_t i = 0; i < symbols; ++i) parent_begin_[i + 1] = parent_begin_[i] + counts[i + 1];
        parent_edges_.resize(parent_begin_.back());
        std::vector<uint64_t> cursor(parent_begin_.begin(), parent_begin_.end() - 1);
        prefix_at_.assign(rules, 0);
        for (uint32_t ri = 0; ri < rules; ++ri) {
            store_.decode_rule(ri, body);
            for (uint32_t i = 0; i < body.size(); ++i)
                parent_edges_[cursor[body[i]]++] = {static_cast<sym>(first_nonterminal + ri), i};
            if (body.size() >= prefix_cache_min) {
                prefix_at_[ri] = prefix_pool_.size() + 1;
                uint64_t total = 0;
                for (sym c : body) {
                    prefix_pool_.push_back(total);
                    total += expansion_length(c);
                }
            }
        }
        h1_char_freq_.fill(0);
        alphabet_size_ = 0;
        store_.for_each_rule_at_height(1, [&](sym, std::span<const sym> r) {
            for (sym c : r)
                if (c < first_nonterminal) ++h1_char_freq_[c];
        });
        for (uint32_t c = 0; c < first_nonterminal; ++c)
            if (parent_begin_[c + 1] > parent_begin_[c]) ++alphabet_size_;
    }

    void extract_into(sym s, uint64_t skip, uint64_t take, std::string& out) const {
        if (s < first_nonterminal) {
            out.push_back(static_cast<char>(s));
            return;
        }
        uint32_t ri = store_.rule_index(s);
        std::vector<sym> body;
        store_.decode_rule(ri, body);
        size_t i = 0;
        if (prefix_at_[ri]) { // jump straight to the child covering `skip`
            const uint64_t* pre = prefix_pool_.data() + prefix_at_[ri] - 1;
            i = std::upper_bound(pre, pre + body.size(), skip) - pre - 1;
            skip -= pre[i];
        }
        for (; i < body.size(); ++i) {
            if (take == 0) return;
            uint64_t len = expansion_length(body[i]);
            if (skip >= len) {
                skip -= len;
                continue;
            }
            uint64_t want = std::min(len - skip, take);
            extract_into(body[i], skip, want, out);
            take -= want;
            skip = 0;
        }
    }

    void climb_collect(sym s, uint64_t offset, std::vector<uint64_t>& out) const {
        if (s == start()) {
            out.push_back(offset + 1);
            return;
        }
        for (const parent_edge& e : parents(s))
            climb_collect(e.parent, offset + left_extent(e.parent, e.index), out);
    }

    static constexpr size_t prefix_cache_min = 64;

    Store store_;
    std::vector<parent_edge> parent_edges_;
    std::vector<uint64_t> parent_begin_; // per symbol id, size 256+rules+1
    std::vector<uint64_t> prefix_pool_;  // left-extent prefix sums of long bodies
    std::vector<uint64_t> prefix_at_;    // per rule: offset+1 into the pool, 0 = short
    std::array<uint64_t, 256> h1_char_freq_{};
    uint32_t alphabet_size_ = 0;
};

template <class Store>
void grammar<Store>::validate() const {
    const uint64_t n = text_len();
    uint32_t rules = rule_count();
    std::vector<sym> body, prev;
    uint64_t rhs_total = 0;
    for (uint16_t h = 1; h <= heights(); ++h) {
        auto [b, e] = store_.height_range(h);
        prev.clear();
        for (uint32_t ri = b; ri < e; ++ri) {
            sym id = first_nonterminal + ri;
            store_.decode_rule(ri, body);
            if (body.empty()) raise(errc::io, "validate: empty rule body");
            rhs_total += body.size();
            // children one height below
            for (sym c : body) {
                uint16_t ch = c < first_nonterminal ? 0 : height_of(c);
                if (ch + 1 != h) raise(errc::io, "validate: child height mismatch");
            }
            // expansion additivity
            uint64_t sum = 0;
            for (sym c : body) sum += expansion_length(c);
            if (sum != expansion_length(id)) raise(errc::io, "validate: expansion length mismatch");
            // strict lexicographic order within a height
            if (ri > b && !(prev < body)) raise(errc::io, "validate: bodies not strictly increasing");
            // bitonic shape for factor rules; the start rule is the final
            // level string and is exempt
            if (id != start()) {
                size_t k = 1;
                while (k < body.size() && body[k - 1] <= body[k]) ++k;
                for (; k < body.size(); ++k)
                    if (k > 0 && body[k - 1] < body[k])
                        raise(errc::not_bitonic, "validate: factor body not bitonic");
            }
            prev = body;
        }
    }
    if (rhs_total != store_.total_rhs_size()) raise(errc::io, "validate: rhs size mismatch");
    if (expansion_length(start()) != n) raise(errc::io, "validate: start expansion != text length");
    // reachability from the start symbol
    std::vector<char> seen(rules, 0);
    std::vector<sym> stack{start()};
    seen[rules - 1] = 1;
    while (!stack.empty()) {
        sym s = stack.back();
        stack.pop_back();
        store_.decode_rule(store_.rule_index(s), body);
        for (sym c : body) {
            if (c < first_nonterminal) continue;
            uint32_t ri = c - first_nonterminal;
            if (!seen[ri]) {
                seen[ri] = 1;
                stack.push_back(c);
            }
        }
    }
    for (uint32_t ri = 0; ri < rules; ++ri)
        if (!seen[ri]) raise(errc::io, "validate: unreachable non-terminal");
    if (parent_edges_.size() != rhs_total) raise(errc::io, "validate: parent edge count mismatch");
}

using nep_grammar = grammar<nep_store>;
using uni_grammar = grammar<uni_store>;

} // namespace gcis
