//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef GADMOL_GRAMMAR_HPP_
#define GADMOL_GRAMMAR_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gadmol/molgraph.hpp"
#include "gadmol/random.hpp"

namespace gadmol {

// The 16-symbol robust string alphabet. The enumerator order is the
// symbol index used by branch-length and ring-offset arithmetic.
enum class Symbol : std::uint8_t {
  kC,
  kDoubleC,
  kTripleC,
  kN,
  kDoubleN,
  kTripleN,
  kO,
  kDoubleO,
  kS,
  kDoubleS,
  kP,
  kF,
  kBranch1,
  kBranch2,
  kRing1,
  kRing2,
};

inline constexpr int kNumSymbols = 16;

constexpr int symbol_index(Symbol s) noexcept { return static_cast<int>(s); }
constexpr Symbol symbol_from_index(int i) noexcept {
  return static_cast<Symbol>(i);
}
constexpr bool is_atom_symbol(Symbol s) noexcept {
  return symbol_index(s) < symbol_index(Symbol::kBranch1);
}

struct AtomSymbolInfo {
  Element element;
  int requested_order;
};

// Requires is_atom_symbol(s).
AtomSymbolInfo atom_symbol_info(Symbol s);

// The atom symbol for (element, bond order), if the alphabet has one.
std::optional<Symbol> atom_symbol_for(Element e, int order);

std::string_view symbol_text(Symbol s) noexcept;

class Genotype {
 public:
  // Throws std::invalid_argument when symbols is empty.
  explicit Genotype(std::vector<Symbol> symbols);

  std::span<const Symbol> symbols() const noexcept { return symbols_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }

  std::string to_string() const;

  friend bool operator==(const Genotype &, const Genotype &) = default;

 private:
  std::vector<Symbol> symbols_;
};

// Parses concatenated bracketed symbols, e.g. "[C][Branch1][C][F][C]".
// Throws SyntaxError with the byte offset of the first bad token.
Genotype parse_genotype(std::string_view text);

// Total: every genotype decodes to a connected, valence-valid graph.
MolecularGraph decode(const Genotype &g);

// Depth-first spanning-tree encoding. decode(encode(G)) is isomorphic to G.
// Throws UnencodableGraph when no traversal can be expressed in the
// alphabet (e.g. a ring offset beyond 257).
Genotype encode(const MolecularGraph &g);

// Uniform i.i.d. symbols with length uniform in [1, max_len].
Genotype random_genotype(Rng &rng, int max_len);

}  // namespace gadmol

#endif  // GADMOL_GRAMMAR_HPP_
