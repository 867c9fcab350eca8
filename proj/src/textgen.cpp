#include "gcis/textgen.hpp"

#include <random>

#include "gcis/error.hpp"

namespace gcis {

namespace {

std::string concat_recurrence(std::string s1, std::string s2, unsigned order, unsigned cap) {
    if (order == 0 || order > cap)
        raise(errc::invalid_value, "order out of range");
    if (order == 1) return s1;
    std::string prev = std::move(s1), cur = std::move(s2);
    for (unsigned k = 3; k <= order; ++k) {
        std::string next;
        next.reserve(cur.size() + prev.size());
        next.append(cur).append(prev);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

} // namespace

std::string fibonacci_word(unsigned order) { return concat_recurrence("a", "ab", order, 43); }

std::string run_rich_word(unsigned order) { return concat_recurrence("aab", "aabab", order, 42); }

std::string thue_morse_word(unsigned order) {
    if (order > 30) raise(errc::invalid_value, "order out of range");
    std::string s = "a";
    for (unsigned k = 0; k < order; ++k) {
        std::string next;
        next.reserve(s.size() * 2);
        for (char c : s) next.append(c == 'a' ? "ab" : "ba");
        s = std::move(next);
    }
    return s;
}

std::string random_text(uint64_t length, unsigned alphabet, uint64_t seed) {
    if (length == 0 || alphabet == 0 || alphabet > 256)
        raise(errc::invalid_value, "bad length or alphabet");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<unsigned> dist(0, alphabet - 1);
    std::string s(length, '\0');
    for (auto& c : s) {
        unsigned d = dist(rng);
        c = static_cast<char>(alphabet <= 26 ? 'a' + d : d);
    }
    return s;
}

} // namespace gcis
