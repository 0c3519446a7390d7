//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef GADMOL_PROPERTIES_HPP_
#define GADMOL_PROPERTIES_HPP_

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "gadmol/molgraph.hpp"

namespace gadmol {

// Graph descriptors shared by the property surrogates and the
// discriminator features. Computed once per molecule.
struct Descriptors {
  int heavy_atoms = 0;
  std::array<int, kNumElements> element_counts{};
  std::vector<int> ring_sizes;  // minimum cycle basis
  int branch_points = 0;        // atoms of degree >= 3
  int max_chain_length = 0;     // graph diameter, counted in atoms
  int multiple_bonds = 0;       // double + triple
  int bonds = 0;
  int unsaturated_ring_carbons = 0;  // C on a <=6 ring with a double bond

  int ring_count() const noexcept { return static_cast<int>(ring_sizes.size()); }
  int large_ring_count() const noexcept;
  int distinct_elements() const noexcept;
  double heteroatom_fraction() const noexcept;
};

Descriptors describe(const MolecularGraph &g);

double logp_raw(const Descriptors &d);
double sa_raw(const Descriptors &d);
double ring_penalty_raw(const Descriptors &d);
double qed(const Descriptors &d);

inline double logp_raw(const MolecularGraph &g) { return logp_raw(describe(g)); }
inline double sa_raw(const MolecularGraph &g) { return sa_raw(describe(g)); }
inline double ring_penalty_raw(const MolecularGraph &g) {
  return ring_penalty_raw(describe(g));
}
inline double qed(const MolecularGraph &g) { return qed(describe(g)); }

// exp(-(x - center)^2 / (2 width^2))
double desirability(double x, double center, double width);

struct MeanStd {
  double mean = 0.0;
  double stddev = 1.0;

  double z(double x) const { return (x - mean) / stddev; }
};

inline constexpr double kStddevFloor = 1e-6;

// Reference-set normalization for logP, SA and ring penalty.
struct NormStats {
  MeanStd logp;
  MeanStd sa;
  MeanStd ring;

  static NormStats identity() { return {}; }
};

// Population mean and stddev, stddev floored at kStddevFloor.
MeanStd mean_std(std::span<const double> values);

struct PropertyRecord {
  double logp_raw = 0.0;
  double sa_raw = 0.0;
  double ring_raw = 0.0;
  double qed = 0.0;
  double logp_z = 0.0;
  double sa_z = 0.0;
  double ring_z = 0.0;
  double j = 0.0;
};

// Throws EmptyReference when the collection is empty.
NormStats fit_norm(std::span<const MolecularGraph> reference);
NormStats fit_norm(std::span<const Descriptors> reference);

PropertyRecord penalized_logp(const Descriptors &d, const NormStats &stats);
inline PropertyRecord penalized_logp(const MolecularGraph &g,
                                     const NormStats &stats) {
  return penalized_logp(describe(g), stats);
}

}  // namespace gadmol

#endif  // GADMOL_PROPERTIES_HPP_
