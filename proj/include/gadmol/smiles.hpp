//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef GADMOL_SMILES_HPP_
#define GADMOL_SMILES_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gadmol/molgraph.hpp"

namespace gadmol {

// Canonical SMILES-like text. Atoms are ranked by iterative neighborhood
// refinement; remaining ties are resolved by trying every member of the
// first tied class and keeping the lexicographically smallest output, so
// isomorphic graphs serialize identically.
std::string canonical(const MolecularGraph &g);

// Writes a SMILES string for a fixed atom ranking (lower rank first).
// Exposed for tests; canonical() is the normal entry point.
std::string write_smiles(const MolecularGraph &g, std::span<const int> rank);

// Restricted SMILES reader: organic-subset atoms C N O S P F, aromatic
// c n o s (Kekulized on read), bonds - = #, branches, ring closures 1-9
// and %nn. Throws SyntaxError, UnsupportedFeature (bracket atoms, charges,
// stereo, elements outside the alphabet, hypervalence) or
// KekulizationFailure.
MolecularGraph parse_smiles(std::string_view text);

}  // namespace gadmol

#endif  // GADMOL_SMILES_HPP_
