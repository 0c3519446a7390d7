//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "gadmol/error.hpp"
#include "gadmol/grammar.hpp"
#include "gadmol/properties.hpp"
#include "gadmol/random.hpp"
#include "gadmol/reference.hpp"
#include "gadmol/smiles.hpp"
#include "oracles.hpp"

using namespace gadmol;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("logP surrogate examples", "[properties]") {
  CHECK_THAT(logp_raw(parse_smiles("C")), WithinAbs(0.20, 1e-12));
  CHECK_THAT(logp_raw(parse_smiles("SSSSSSSS")), WithinAbs(4.80, 1e-12));
  CHECK_THAT(logp_raw(parse_smiles("C1=CC=CC=C1")), WithinAbs(1.80, 1e-12));
  // Saturated ring carbons are not aromatic-like.
  CHECK_THAT(logp_raw(parse_smiles("C1CCCCC1")), WithinAbs(1.20, 1e-12));
  // A seven-ring with a double bond is too large to count.
  CHECK_THAT(logp_raw(parse_smiles("C1=CCCCCC1")), WithinAbs(1.40, 1e-12));
  CHECK_THAT(logp_raw(parse_smiles("NOPF")), WithinAbs(-0.6 - 0.4 - 0.5 + 0.2, 1e-12));
}

TEST_CASE("SA surrogate examples", "[properties]") {
  CHECK_THAT(sa_raw(parse_smiles("C")), WithinAbs(0.05, 1e-12));
  CHECK_THAT(sa_raw(parse_smiles("C1CCCC1")), WithinAbs(0.65, 1e-12));
  CHECK_THAT(sa_raw(parse_smiles("CC(C)(C)C")), WithinAbs(0.55, 1e-12));
  CHECK_THAT(sa_raw(parse_smiles("CO")), WithinAbs(0.10 + 0.80, 1e-12));
}

TEST_CASE("ring penalty examples", "[properties]") {
  CHECK(ring_penalty_raw(parse_smiles("C1CCCCC1")) == 0.0);
  CHECK(ring_penalty_raw(parse_smiles("C1CCCCCCC1")) == 2.0);
  CHECK(ring_penalty_raw(parse_smiles("CCCCCCCCCC")) == 0.0);
}

TEST_CASE("QED surrogate examples", "[properties]") {
  // Frozen from a direct scalar evaluation of the four desirabilities.
  CHECK_THAT(qed(parse_smiles("C")), WithinRel(0.18636103385157174, 1e-12));
  CHECK_THAT(qed(parse_smiles("C")), WithinRel(oracle::qed(parse_smiles("C")), 1e-12));
  CHECK(desirability(3.0, 3.0, 1.0) == 1.0);
  Rng rng(4);
  for (int i = 0; i < 300; ++i) {
    const double q = qed(decode(random_genotype(rng, 60)));
    CHECK(q > 0.0);
    CHECK(q <= 1.0);
  }
}

TEST_CASE("QED reaches one at the joint optimum", "[properties]") {
  // The optimum needs 23 atoms, logP 2.5, two rings and 25% heteroatoms,
  // which this alphabet cannot hit exactly; check the formula instead.
  const double d = desirability(23, 23, 8) * desirability(2.5, 2.5, 2.0) *
                   desirability(2, 2, 1.5) * desirability(0.25, 0.25, 0.15);
  CHECK(std::pow(d, 0.25) == 1.0);
}

TEST_CASE("surrogates agree with first-principles recomputation", "[properties][property]") {
  Rng rng(12);
  int checked = 0;
  while (checked < 500) {
    const MolecularGraph g = decode(random_genotype(rng, 40));
    if (g.num_atoms() > 20) continue;
    INFO(canonical(g));
    const Descriptors d = describe(g);
    CHECK_THAT(logp_raw(d), WithinAbs(oracle::logp(g), 1e-9));
    CHECK_THAT(sa_raw(d), WithinAbs(oracle::sa(g), 1e-9));
    CHECK_THAT(ring_penalty_raw(d), WithinAbs(oracle::ring_penalty(g), 1e-9));
    CHECK_THAT(qed(d), WithinAbs(oracle::qed(g), 1e-12));
    ++checked;
  }
}

TEST_CASE("properties are invariant under relabelling", "[properties][property]") {
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    const MolecularGraph g = decode(random_genotype(rng, 60));
    std::vector<int> p(g.num_atoms());
    std::iota(p.begin(), p.end(), 0);
    for (int k = g.num_atoms() - 1; k > 0; --k) std::swap(p[k], p[rng.below_int(k + 1)]);
    const MolecularGraph h = g.permuted(p);
    CHECK(logp_raw(g) == logp_raw(h));
    CHECK(sa_raw(g) == sa_raw(h));
    CHECK(ring_penalty_raw(g) == ring_penalty_raw(h));
    CHECK(qed(g) == qed(h));
  }
}

TEST_CASE("penalized logP arithmetic", "[properties]") {
  const PropertyRecord p = penalized_logp(parse_smiles("C"), NormStats::identity());
  CHECK_THAT(p.j, WithinAbs(0.15, 1e-12));
  CHECK(p.j == p.logp_z - p.sa_z - p.ring_z);
}

TEST_CASE("penalized logP is monotone in each term", "[properties][property]") {
  NormStats s;
  s.logp = {1.0, 2.0};
  s.sa = {0.5, 0.3};
  s.ring = {0.1, 0.7};
  Rng rng(14);
  for (int i = 0; i < 200; ++i) {
    Descriptors base = describe(decode(random_genotype(rng, 30)));
    const double j0 = penalized_logp(base, s).j;
    Descriptors more_s = base;  // sulfur raises logP and SA by fixed amounts
    ++more_s.element_counts[element_index(Element::kS)];
    ++more_s.heavy_atoms;
    const double dl = 0.6 / s.logp.stddev, ds = 0.05 / s.sa.stddev;
    const bool new_element = base.element_counts[element_index(Element::kS)] == 0;
    const double expected = j0 + dl - ds - (new_element ? 0.8 / s.sa.stddev : 0.0);
    CHECK_THAT(penalized_logp(more_s, s).j, WithinAbs(expected, 1e-9));
    Descriptors bigger_ring = base;
    bigger_ring.ring_sizes.push_back(9);
    const double j_ring = penalized_logp(bigger_ring, s).j;
    CHECK(j_ring < j0);
  }
}

TEST_CASE("normalization statistics", "[properties]") {
  const std::vector<double> same = {2.0, 2.0, 2.0};
  const MeanStd m = mean_std(same);
  CHECK(m.mean == 2.0);
  CHECK(m.stddev == kStddevFloor);
  CHECK(std::isfinite(m.z(3.0)));
  CHECK_THROWS_AS(mean_std(std::vector<double>{}), EmptyReference);
  CHECK_THROWS_AS(fit_norm(std::vector<MolecularGraph>{}), EmptyReference);

  const std::vector<MolecularGraph> clones(5, parse_smiles("CCO"));
  const NormStats flat = fit_norm(clones);
  CHECK(flat.logp.stddev == kStddevFloor);
  CHECK(std::isfinite(penalized_logp(parse_smiles("CCC"), flat).j));
}

TEST_CASE("reference j has zero mean", "[properties]") {
  const ReferenceSet ref = load_reference(GADMOL_DEFAULT_REFERENCE);
  double total = 0.0;
  for (const Descriptors &d : ref.descriptors) total += penalized_logp(d, ref.norm).j;
  CHECK(std::abs(total / static_cast<double>(ref.size())) < 1e-9);
}

TEST_CASE("design-rule molecules rank with the sulfur chain first", "[properties]") {
  const ReferenceSet ref = load_reference(GADMOL_DEFAULT_REFERENCE);
  const std::string s_chain(81, 'S');
  std::string c_chain;
  while (c_chain.size() + 3 <= 81) c_chain += "C=C";
  std::string bridged = "C1=CC=C(C=C1)";
  while (bridged.size() + 14 <= 81) bridged += "SC1=CC=C(C=C1)";
  const double js = penalized_logp(parse_smiles(s_chain), ref.norm).j;
  const double jc = penalized_logp(parse_smiles(c_chain), ref.norm).j;
  const double jb = penalized_logp(parse_smiles(bridged), ref.norm).j;
  CHECK(js > jc);
  CHECK(js > jb);
}
