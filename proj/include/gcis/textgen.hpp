#pragma once

#include <cstdint>
#include <string>

// Deterministic synthetic corpora for tests and benchmarks.
//
//   fibonacci:  S_1 = "a", S_2 = "ab", S_k = S_{k-1} S_{k-2};
//               |S_k| is the (k+1)-st Fibonacci number.
//   thue-morse: k iterations of a -> ab, b -> ba starting from "a";
//               length 2^k.
//   run-rich:   r_1 = "aab", r_2 = "aabab", r_k = r_{k-1} r_{k-2};
//               a Fibonacci-style concatenation dense in runs.
//   random:     i.i.d. over the first `alphabet` symbols, mapped to
//               'a'.. for alphabets up to 26 and to raw bytes 0.. above.

namespace gcis {

std::string fibonacci_word(unsigned order);
std::string thue_morse_word(unsigned order);
std::string run_rich_word(unsigned order);
std::string random_text(uint64_t length, unsigned alphabet, uint64_t seed);

} // namespace gcis
