#pragma once

// Test-only reference implementations, independent of the library's code
// paths: suffix types straight from the definition (lexicographic suffix
// comparison), factor boundaries from those types, and an O(nm) scanner
// for locate. Expected values in the tests are frozen from these.

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gcis/lms.hpp"

namespace oracles {

// type by definition: suffix i is L iff s[i..] > s[i+1..]; last suffix S.
// Under the stipulated-S end, a suffix that runs out of symbols compares
// above one that still has them, so the longer suffix is the smaller one
// when the shorter is its prefix.
template <class Sym>
std::vector<gcis::suffix_type> types_by_suffix_compare(std::span<const Sym> s) {
    size_t n = s.size();
    std::vector<gcis::suffix_type> t(n, gcis::suffix_type::s_type);
    for (size_t i = 0; i + 1 < n; ++i) {
        std::span<const Sym> a = s.subspan(i), b = s.subspan(i + 1);
        int cmp = 0;
        for (size_t k = 0; k < b.size(); ++k) {
            if (a[k] != b[k]) {
                cmp = a[k] < b[k] ? -1 : 1;
                break;
            }
        }
        if (cmp == 0) cmp = -1;
        t[i] = cmp > 0 ? gcis::suffix_type::l_type : gcis::suffix_type::s_type;
    }
    for (size_t i = n; i-- > 1;)
        if (t[i] == gcis::suffix_type::s_type && t[i - 1] == gcis::suffix_type::l_type)
            t[i] = gcis::suffix_type::s_star;
    return t;
}

template <class Sym>
std::vector<uint32_t> boundaries_by_definition(std::span<const Sym> s) {
    auto t = types_by_suffix_compare(s);
    std::vector<uint32_t> b{0};
    for (size_t i = 1; i < s.size(); ++i)
        if (t[i] == gcis::suffix_type::s_star) b.push_back(static_cast<uint32_t>(i));
    return b;
}

inline std::vector<uint64_t> naive_locate(std::string_view text, std::string_view pat) {
    std::vector<uint64_t> out;
    if (pat.empty() || pat.size() > text.size()) return out;
    for (size_t i = 0; i + pat.size() <= text.size(); ++i)
        if (text.compare(i, pat.size(), pat) == 0) out.push_back(i + 1);
    return out;
}

inline std::string random_text(std::mt19937_64& rng, size_t len, unsigned sigma) {
    std::uniform_int_distribution<unsigned> dist(0, sigma - 1);
    std::string s(len, '\0');
    for (auto& c : s) {
        unsigned d = dist(rng);
        c = static_cast<char>(sigma <= 26 ? 'a' + d : d);
    }
    return s;
}

// half the query mix: a substring actually present in the text
inline std::string sample_substring(std::mt19937_64& rng, std::string_view text, size_t len) {
    std::uniform_int_distribution<size_t> dist(0, text.size() - len);
    return std::string(text.substr(dist(rng), len));
}

} // namespace oracles
