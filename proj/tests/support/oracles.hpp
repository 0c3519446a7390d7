//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

// Slow, independent reference implementations used to check the library.
// None of them calls into the code under test beyond the graph accessors.

#ifndef GADMOL_TESTS_ORACLES_HPP_
#define GADMOL_TESTS_ORACLES_HPP_

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "gadmol/molgraph.hpp"

namespace oracle {

using gadmol::MolecularGraph;

// Valence caps written out independently of the library table.
int max_bonds(char element_symbol);

// Checks bond orders, per-atom order sums, self loops, parallel bonds and
// connectivity. Returns an empty string when the graph is valid.
std::string valence_problem(const MolecularGraph &g);

// Backtracking isomorphism test respecting elements and bond orders.
bool isomorphic(const MolecularGraph &a, const MolecularGraph &b);

// Every simple cycle as a sorted set of bond ids. Exponential; small graphs only.
std::vector<std::set<int>> simple_cycles(const MolecularGraph &g);

// Sizes of a minimum cycle basis found by greedy GF(2) selection over all
// simple cycles, sorted ascending.
std::vector<int> min_basis_sizes(const MolecularGraph &g);

// Atoms on a simple cycle of length <= 6 containing a double bond.
std::vector<char> small_unsaturated_ring_atoms(const MolecularGraph &g);

// Property surrogates recomputed from first principles.
double logp(const MolecularGraph &g);
double sa(const MolecularGraph &g);
double ring_penalty(const MolecularGraph &g);
double qed(const MolecularGraph &g);

// Circular fingerprint as a set of set bits, built without the library's
// ring perception or hashing code.
std::set<int> fingerprint_bits(const MolecularGraph &g, int radius = 2, int nbits = 1024);
double tanimoto(const std::set<int> &a, const std::set<int> &b);

// Eigenvalues (descending) and eigenvectors (columns) of a symmetric matrix
// by cyclic Jacobi rotations.
struct Eigen {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;  // vectors[k] is the k-th eigenvector
};
Eigen jacobi_eigen(std::vector<std::vector<double>> a, double tol = 1e-14,
                   int max_sweeps = 100);

// Sample covariance (divisor n - 1) of row vectors.
std::vector<std::vector<double>> covariance(const std::vector<std::vector<double>> &rows);

// Central difference of f at x along coordinate i.
double central_difference(const std::function<double(const std::vector<double> &)> &f,
                          std::vector<double> x, std::size_t i, double h);

// Upper tail of the binomial(n, 1/2) distribution: P[X >= k].
double sign_test_p(int n, int k);

}  // namespace oracle

#endif  // GADMOL_TESTS_ORACLES_HPP_
