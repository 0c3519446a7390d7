//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <catch_amalgamated.hpp>

#include <array>
#include <cmath>

#include "gadmol/error.hpp"
#include "gadmol/grammar.hpp"
#include "gadmol/random.hpp"
#include "gadmol/smiles.hpp"
#include "oracles.hpp"

using namespace gadmol;

namespace {

MolecularGraph dec(std::string_view text) { return decode(parse_genotype(text)); }

}  // namespace

TEST_CASE("alphabet order is fixed", "[grammar]") {
  const std::array<std::string_view, kNumSymbols> expected = {
      "[C]", "[=C]", "[#C]", "[N]",       "[=N]",      "[#N]",    "[O]",    "[=O]",
      "[S]", "[=S]", "[P]",  "[F]",       "[Branch1]", "[Branch2]", "[Ring1]", "[Ring2]"};
  for (int i = 0; i < kNumSymbols; ++i) {
    CHECK(symbol_text(symbol_from_index(i)) == expected[i]);
    CHECK(symbol_index(symbol_from_index(i)) == i);
  }
}

TEST_CASE("linear chain decodes to single bonds", "[grammar]") {
  const MolecularGraph g = dec("[C][C][C]");
  REQUIRE(g.num_atoms() == 3);
  REQUIRE(g.num_bonds() == 2);
  for (const Bond &b : g.bonds()) CHECK(b.order == 1);
  CHECK(canonical(g) == "CCC");
}

TEST_CASE("requested bond order is clamped by the new atom's cap", "[grammar]") {
  const MolecularGraph g = dec("[F][=C]");
  REQUIRE(g.num_atoms() == 2);
  REQUIRE(g.num_bonds() == 1);
  CHECK(g.bonds()[0].order == 1);
  CHECK(oracle::valence_problem(g).empty());
}

TEST_CASE("ring symbol closes a five-membered ring", "[grammar]") {
  const MolecularGraph g = dec("[C][C][C][C][C][Ring1][#C]");
  REQUIRE(g.num_atoms() == 5);
  CHECK(oracle::min_basis_sizes(g) == std::vector<int>{5});
  CHECK(g.bond_order(4, 0) == 1);
}

TEST_CASE("branch of length one", "[grammar]") {
  const MolecularGraph g = dec("[C][Branch1][C][F][C]");
  REQUIRE(g.num_atoms() == 3);
  CHECK(g.element(1) == Element::kF);
  CHECK(g.has_bond(0, 1));
  CHECK(g.has_bond(0, 2));
  CHECK_FALSE(g.has_bond(1, 2));
}

TEST_CASE("control-only strings fall back to methane", "[grammar]") {
  const MolecularGraph g = dec("[Ring1][Ring1]");
  CHECK(g.num_atoms() == 1);
  CHECK(g.element(0) == Element::kC);
  CHECK(dec("[Branch1]").num_atoms() == 1);
}

TEST_CASE("derivation stops at a saturated atom", "[grammar]") {
  // F has no valence left after bonding to C, so the trailing atoms are dropped.
  const MolecularGraph g = dec("[C][F][C][C]");
  CHECK(g.num_atoms() == 2);
}

TEST_CASE("trailing control symbols without indices are ignored", "[grammar]") {
  CHECK(canonical(dec("[C][C][Ring1]")) == "CC");
  CHECK(canonical(dec("[C][C][Branch2][C]")) == "CC");
}

TEST_CASE("ring offset beyond the first atom is clamped", "[grammar]") {
  // Offset idx([Ring2])+2 = 17 reaches past atom 0; the bond goes to atom 0.
  const MolecularGraph g = dec("[C][C][C][C][Ring1][Ring2]");
  CHECK(g.num_atoms() == 4);
  CHECK(g.has_bond(3, 0));
}

TEST_CASE("parser reports the offset of an unknown token", "[grammar]") {
  try {
    parse_genotype("[C][Xx][C]");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError &e) {
    CHECK(e.offset() == 3);
  }
  CHECK_THROWS_AS(parse_genotype(""), SyntaxError);
  CHECK_THROWS_AS(parse_genotype("[C"), SyntaxError);
}

TEST_CASE("encode examples", "[grammar]") {
  CHECK(encode(dec("[C]")).to_string() == "[C]");
  const MolecularGraph ring = parse_smiles("C1CCCC1");
  const Genotype g = encode(ring);
  CHECK(g.size() == 7);
  CHECK(oracle::isomorphic(decode(g), ring));
  const MolecularGraph fc = parse_smiles("FC");
  CHECK(oracle::isomorphic(decode(encode(fc)), fc));
}

TEST_CASE("genotype text round trip", "[grammar]") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const Genotype g = random_genotype(rng, 30);
    CHECK(parse_genotype(g.to_string()) == g);
  }
}

TEST_CASE("random genotypes: single symbol is uniform", "[grammar]") {
  Rng rng(2024);
  std::array<int, kNumSymbols> counts{};
  constexpr int kDraws = 10000;
  for (int i = 0; i < kDraws; ++i) {
    const Genotype g = random_genotype(rng, 1);
    REQUIRE(g.size() == 1);
    ++counts[symbol_index(g[0])];
  }
  double chi2 = 0.0;
  const double expected = kDraws / static_cast<double>(kNumSymbols);
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 15 degrees of freedom; 0.999 quantile is about 37.7.
  CHECK(chi2 < 37.7);
}

TEST_CASE("random genotypes are reproducible", "[grammar]") {
  Rng a(5), b(5);
  for (int i = 0; i < 50; ++i) CHECK(random_genotype(a, 40) == random_genotype(b, 40));
}

TEST_CASE("decode totality on random strings", "[grammar][property]") {
  Rng rng(77);
  for (int i = 0; i < 5000; ++i) {
    const Genotype g = random_genotype(rng, 50);
    const MolecularGraph m = decode(g);
    INFO(g.to_string());
    REQUIRE(oracle::valence_problem(m).empty());
    REQUIRE(canonical(decode(g)) == canonical(m));
  }
}

TEST_CASE("round trip through encode on small graphs", "[grammar][property]") {
  Rng rng(99);
  int checked = 0;
  while (checked < 1000) {
    const MolecularGraph m = decode(random_genotype(rng, 24));
    if (m.num_atoms() > 12) continue;
    INFO(canonical(m));
    REQUIRE(oracle::isomorphic(decode(encode(m)), m));
    ++checked;
  }
}

TEST_CASE("single-symbol replacement changes the decoded molecule", "[grammar][property]") {
  // Replacing the first atom symbol with a different element always shows.
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const Genotype base = random_genotype(rng, 20);
    std::vector<Symbol> s(base.symbols().begin(), base.symbols().end());
    s.insert(s.begin(), Symbol::kC);
    std::vector<Symbol> t = s;
    t[0] = Symbol::kS;
    CHECK(canonical(decode(Genotype(s))) != canonical(decode(Genotype(t))));
  }
}
