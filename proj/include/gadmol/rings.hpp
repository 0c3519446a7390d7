//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef GADMOL_RINGS_HPP_
#define GADMOL_RINGS_HPP_

#include <vector>

#include "gadmol/molgraph.hpp"

namespace gadmol {

struct Cycle {
  std::vector<int> atoms;  // in ring order
  std::vector<int> bonds;  // bond ids, bonds[i] joins atoms[i], atoms[i+1]

  int size() const noexcept { return static_cast<int>(atoms.size()); }
};

// Minimum cycle basis: shortest cycles through each bond (then Horton
// candidates if needed), sorted by length and kept greedily when
// independent over GF(2). Size = |bonds| - |atoms| + 1 for connected input.
std::vector<Cycle> rings(const MolecularGraph &g);

// Atoms incident to at least one non-bridge bond.
std::vector<char> ring_atoms(const MolecularGraph &g);

// Atoms lying on some simple cycle of length <= max_size that contains a
// double bond. Independent of which minimum basis was chosen.
std::vector<char> atoms_in_small_unsaturated_ring(const MolecularGraph &g,
                                                  int max_size = 6);

}  // namespace gadmol

#endif  // GADMOL_RINGS_HPP_
