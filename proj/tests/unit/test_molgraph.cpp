//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "gadmol/error.hpp"
#include "gadmol/fingerprint.hpp"
#include "gadmol/grammar.hpp"
#include "gadmol/random.hpp"
#include "gadmol/rings.hpp"
#include "gadmol/smiles.hpp"
#include "oracles.hpp"

using namespace gadmol;

namespace {

std::vector<int> random_permutation(int n, Rng &rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(p[i], p[rng.below_int(i + 1)]);
  return p;
}

std::vector<int> basis_sizes(const MolecularGraph &g) {
  std::vector<int> s;
  for (const Cycle &c : rings(g)) s.push_back(c.size());
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

TEST_CASE("validate examples", "[molgraph]") {
  CHECK(validate(methane()).ok());

  MolecularGraph five;
  five.add_atom(Element::kC);
  for (int i = 0; i < 5; ++i) five.add_bond(0, five.add_atom(Element::kC), 1);
  const ValidationReport r = validate(five);
  REQUIRE_FALSE(r.ok());
  CHECK(r.violations.front().kind == ViolationKind::kValence);
  CHECK(r.violations.front().atom == 0);

  MolecularGraph apart;
  apart.add_atom(Element::kC);
  apart.add_atom(Element::kC);
  const ValidationReport d = validate(apart);
  REQUIRE_FALSE(d.ok());
  CHECK(d.violations.front().kind == ViolationKind::kDisconnected);
}

TEST_CASE("validate agrees with the independent checker", "[molgraph][property]") {
  Rng rng(8);
  for (int i = 0; i < 500; ++i) {
    const MolecularGraph g = decode(random_genotype(rng, 40));
    CHECK(validate(g).ok() == oracle::valence_problem(g).empty());
  }
}

TEST_CASE("ring perception examples", "[rings]") {
  CHECK(basis_sizes(parse_smiles("C1CCCC1")) == std::vector<int>{5});
  CHECK(rings(parse_smiles("CCCCCC")).empty());
  const MolecularGraph naph = parse_smiles("C1CCC2CCCCC2C1");
  CHECK(basis_sizes(naph) == std::vector<int>{6, 6});
  CHECK(oracle::min_basis_sizes(naph) == std::vector<int>{6, 6});
}

TEST_CASE("ring basis matches brute force and circuit rank", "[rings][property]") {
  Rng rng(21);
  int checked = 0;
  while (checked < 400) {
    const MolecularGraph g = decode(random_genotype(rng, 40));
    if (g.num_atoms() > 18) continue;
    INFO(canonical(g));
    CHECK(static_cast<int>(rings(g).size()) == g.num_bonds() - g.num_atoms() + 1);
    CHECK(basis_sizes(g) == oracle::min_basis_sizes(g));
    ++checked;
  }
}

TEST_CASE("cycles in the basis are genuine cycles", "[rings]") {
  const MolecularGraph g = parse_smiles("C1CC2CCC1C2");
  for (const Cycle &c : rings(g)) {
    for (int i = 0; i < c.size(); ++i)
      CHECK(g.has_bond(c.atoms[i], c.atoms[(i + 1) % c.size()]));
  }
}

TEST_CASE("smiles examples", "[smiles]") {
  const MolecularGraph chain = parse_smiles("CCC");
  CHECK(chain.num_atoms() == 3);
  CHECK(canonical(chain) == "CCC");

  const MolecularGraph benzene = parse_smiles("c1ccccc1");
  CHECK(benzene.num_atoms() == 6);
  CHECK(validate(benzene).ok());
  CHECK(oracle::min_basis_sizes(benzene) == std::vector<int>{6});
  int doubles = 0;
  for (const Bond &b : benzene.bonds()) doubles += b.order == 2;
  CHECK(doubles == 3);
  for (int a = 0; a < 6; ++a) CHECK(benzene.bond_order_sum(a) + 1 == 4);

  try {
    parse_smiles("C[NH3+]");
    FAIL("expected UnsupportedFeature");
  } catch (const UnsupportedFeature &e) {
    CHECK(e.offset() == 1);
  }
  CHECK_THROWS_AS(parse_smiles("C/C=C/C"), UnsupportedFeature);
  CHECK_THROWS_AS(parse_smiles("[13C]"), UnsupportedFeature);
  CHECK_THROWS_AS(parse_smiles("C1CC"), SyntaxError);
  CHECK_THROWS_AS(parse_smiles("C(C"), SyntaxError);
  CHECK_THROWS_AS(parse_smiles("c1cccc1"), KekulizationFailure);
}

TEST_CASE("smiles supports aromatic heteroatoms and two-digit closures", "[smiles]") {
  CHECK(validate(parse_smiles("c1ccncc1")).ok());
  CHECK(validate(parse_smiles("c1ccoc1")).ok());
  CHECK(validate(parse_smiles("c1ccsc1")).ok());
  CHECK(oracle::isomorphic(parse_smiles("C%12CCCC%12"), parse_smiles("C1CCCC1")));
  CHECK(oracle::isomorphic(parse_smiles("C-C"), parse_smiles("CC")));
  CHECK(parse_smiles("C-C=CC#N").num_atoms() == 5);
}

TEST_CASE("canonical text is deterministic and re-parses", "[smiles]") {
  const MolecularGraph g = decode(parse_genotype("[C][Branch1][C][F][C]"));
  CHECK(canonical(g) == canonical(g));
  CHECK(oracle::isomorphic(parse_smiles(canonical(g)), g));
}

TEST_CASE("canonical form is invariant under atom relabelling", "[smiles][property]") {
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const MolecularGraph g = decode(random_genotype(rng, 50));
    const std::string text = canonical(g);
    for (int k = 0; k < 100; ++k) {
      const MolecularGraph p = g.permuted(random_permutation(g.num_atoms(), rng));
      REQUIRE(canonical(p) == text);
    }
  }
}

TEST_CASE("canonical text re-parses isomorphically", "[smiles][property]") {
  Rng rng(41);
  int small = 0;
  for (int i = 0; i < 2000; ++i) {
    const MolecularGraph g = decode(random_genotype(rng, 50));
    const std::string text = canonical(g);
    const MolecularGraph back = parse_smiles(text);
    REQUIRE(canonical(back) == text);
    if (g.num_atoms() <= 12) {
      REQUIRE(oracle::isomorphic(back, g));
      ++small;
    }
  }
  CHECK(small > 100);
}

TEST_CASE("fingerprint examples", "[fingerprint]") {
  const MolecularGraph c = parse_smiles("C"), o = parse_smiles("O"), cc = parse_smiles("CC");
  CHECK(fingerprint(c) == fingerprint(parse_smiles("C")));
  CHECK_FALSE(fingerprint(c) == fingerprint(o));
  CHECK(tanimoto(fingerprint(c), fingerprint(cc)) < 1.0);
  CHECK(fingerprint(c).size() == 1024);
}

TEST_CASE("fingerprint matches the independent implementation", "[fingerprint][property]") {
  Rng rng(51);
  for (int i = 0; i < 500; ++i) {
    const MolecularGraph g = decode(random_genotype(rng, 50));
    const Fingerprint fp = fingerprint(g);
    std::set<int> bits;
    for (int b = 0; b < fp.size(); ++b)
      if (fp.test(b)) bits.insert(b);
    REQUIRE(bits == oracle::fingerprint_bits(g));
    const MolecularGraph p = g.permuted(random_permutation(g.num_atoms(), rng));
    REQUIRE(fingerprint(p) == fp);
  }
}

TEST_CASE("tanimoto examples and laws", "[fingerprint]") {
  Fingerprint a(16), b(16), e1(16), e2(16);
  for (int bit : {1, 2, 3}) a.set(bit);
  for (int bit : {2, 3, 4}) b.set(bit);
  CHECK(tanimoto(a, b) == 0.5);
  CHECK(tanimoto(a, a) == 1.0);
  CHECK(tanimoto(e1, e2) == 1.0);
  Fingerprint c(16);
  c.set(9);
  CHECK(tanimoto(a, c) == 0.0);

  Rng rng(61);
  for (int i = 0; i < 200; ++i) {
    const Fingerprint x = fingerprint(decode(random_genotype(rng, 30)));
    const Fingerprint y = fingerprint(decode(random_genotype(rng, 30)));
    const double t = tanimoto(x, y);
    CHECK(t == tanimoto(y, x));
    CHECK(t >= 0.0);
    CHECK(t <= 1.0);
    CHECK((t == 1.0) == (x == y));
  }
}
