#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "gcis/grammar.hpp"

// Index container (little-endian):
//   magic "GCISIDX1" | version u16 | encoding u8 (0 nep, 1 uni) | flags u8
//   | n u64 | tau u16 | per-height rule counts u32 x tau | payload
//   | crc32 u32 over every preceding byte.
//
// nep payload: Q u64 x (rules+1), R u32 x g, L u64 x rules.
// uni payload: F and Q as Elias-Fano blocks (universe u64, count u64,
// low width u8, low words, high words; word counts derive from the three
// scalars), delta stream (bit length u64 + words), L tiers (two boundary
// u64s + 8/16/32-bit arrays), start body (length u64 + u32s).

namespace gcis {

inline constexpr char index_magic[8] = {'G', 'C', 'I', 'S', 'I', 'D', 'X', '1'};
inline constexpr uint16_t index_version = 1;

enum class index_encoding : uint8_t { nep = 0, uni = 1 };

void write_index(std::ostream& os, const nep_store& store);
void write_index(std::ostream& os, const uni_store& store);

std::variant<nep_store, uni_store> read_index(std::istream& is);

void save_index(const std::string& path, const nep_store& store);
void save_index(const std::string& path, const uni_store& store);

using any_grammar = std::variant<grammar<nep_store>, grammar<uni_store>>;

any_grammar load_index(const std::string& path);

} // namespace gcis
