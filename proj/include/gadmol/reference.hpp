//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef GADMOL_REFERENCE_HPP_
#define GADMOL_REFERENCE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gadmol/discriminator.hpp"
#include "gadmol/molgraph.hpp"
#include "gadmol/properties.hpp"

namespace gadmol {

inline constexpr int kMinReferenceSize = 100;

struct ReferenceFailure {
  int line = 0;  // 1-based
  std::string text;
  std::string message;
};

// Reference molecules with their frozen property and feature statistics.
struct ReferenceSet {
  std::string source;
  std::vector<std::string> smiles;  // input text of usable lines
  std::vector<MolecularGraph> graphs;
  std::vector<Descriptors> descriptors;
  std::vector<FeatureVector> features;
  std::vector<ReferenceFailure> failures;
  int total_lines = 0;  // non-blank, non-comment lines
  NormStats norm;
  FeatureNorm feature_norm;

  std::size_t size() const noexcept { return graphs.size(); }
  double usable_fraction() const noexcept {
    return total_lines == 0 ? 0.0 : static_cast<double>(size()) / total_lines;
  }
};

// One SMILES per line; text after the first whitespace is ignored, as are
// blank lines and lines starting with '#'. Unsupported lines are recorded
// in `failures` and skipped. Throws ConfigError when the file cannot be
// opened and EmptyReference with fewer than `min_usable` molecules.
ReferenceSet load_reference(const std::string &path, int min_usable = kMinReferenceSize);
ReferenceSet reference_from_lines(std::span<const std::string> lines, std::string source,
                                  int min_usable = kMinReferenceSize);

// n random genotypes whose canonical length lies in
// [min_canonical, max_canonical]; stands in for a reference file.
ReferenceSet synthetic_reference(int n, std::uint64_t seed, int min_canonical = 10,
                                 int max_canonical = 81);

}  // namespace gadmol

#endif  // GADMOL_REFERENCE_HPP_
