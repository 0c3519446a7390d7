//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "gadmol/properties.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "gadmol/error.hpp"
#include "gadmol/rings.hpp"

namespace gadmol {
namespace {

int diameter_in_atoms(const MolecularGraph &g) {
  const int n = g.num_atoms();
  int best = 0;
  std::vector<int> dist(n);
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::queue<int> q;
    q.push(s);
    dist[s] = 0;
    while (!q.empty()) {
      const int a = q.front();
      q.pop();
      best = std::max(best, dist[a]);
      for (const Neighbor &nb : g.neighbors(a)) {
        if (dist[nb.atom] < 0) {
          dist[nb.atom] = dist[a] + 1;
          q.push(nb.atom);
        }
      }
    }
  }
  return n == 0 ? 0 : best + 1;
}

// Per-atom additive logP contributions.
constexpr double kLogpUnsaturatedRingC = 0.30;
constexpr double kLogpC = 0.20;
constexpr std::array<double, kNumElements> kLogpByElement = {
    kLogpC, -0.60, -0.40, 0.60, -0.50, 0.20};

}  // namespace

int Descriptors::large_ring_count() const noexcept {
  return static_cast<int>(
      std::count_if(ring_sizes.begin(), ring_sizes.end(), [](int s) { return s > 6; }));
}

int Descriptors::distinct_elements() const noexcept {
  return static_cast<int>(std::count_if(element_counts.begin(), element_counts.end(),
                                        [](int c) { return c > 0; }));
}

double Descriptors::heteroatom_fraction() const noexcept {
  if (heavy_atoms == 0) return 0.0;
  return static_cast<double>(heavy_atoms - element_counts[element_index(Element::kC)]) /
         heavy_atoms;
}

Descriptors describe(const MolecularGraph &g) {
  Descriptors d;
  d.heavy_atoms = g.num_atoms();
  d.bonds = g.num_bonds();
  for (int a = 0; a < g.num_atoms(); ++a) {
    ++d.element_counts[element_index(g.element(a))];
    if (g.degree(a) >= 3) ++d.branch_points;
  }
  for (const Bond &b : g.bonds())
    if (b.order >= 2) ++d.multiple_bonds;
  for (const Cycle &c : rings(g)) d.ring_sizes.push_back(c.size());
  std::sort(d.ring_sizes.begin(), d.ring_sizes.end());
  if (!d.ring_sizes.empty() && d.multiple_bonds > 0) {
    const std::vector<char> mark = atoms_in_small_unsaturated_ring(g, 6);
    for (int a = 0; a < g.num_atoms(); ++a)
      if (mark[a] && g.element(a) == Element::kC) ++d.unsaturated_ring_carbons;
  }
  d.max_chain_length = diameter_in_atoms(g);
  return d;
}

double logp_raw(const Descriptors &d) {
  double total = 0.0;
  for (int e = 0; e < kNumElements; ++e) total += kLogpByElement[e] * d.element_counts[e];
  total += (kLogpUnsaturatedRingC - kLogpC) * d.unsaturated_ring_carbons;
  return total;
}

double sa_raw(const Descriptors &d) {
  return 0.05 * d.heavy_atoms + 0.30 * d.branch_points + 0.40 * d.ring_count() +
         0.80 * (d.distinct_elements() - 1);
}

double ring_penalty_raw(const Descriptors &d) {
  double total = 0.0;
  for (int s : d.ring_sizes) total += std::max(0, s - 6);
  return total;
}

double desirability(double x, double center, double width) {
  const double u = x - center;
  return std::exp(-(u * u) / (2.0 * width * width));
}

double qed(const Descriptors &d) {
  const double product = desirability(d.heavy_atoms, 23.0, 8.0) *
                         desirability(logp_raw(d), 2.5, 2.0) *
                         desirability(d.ring_count(), 2.0, 1.5) *
                         desirability(d.heteroatom_fraction(), 0.25, 0.15);
  return std::pow(product, 0.25);
}

MeanStd mean_std(std::span<const double> values) {
  if (values.empty()) throw EmptyReference("no values to normalize");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(values.size());
  return {mean, std::max(std::sqrt(var), kStddevFloor)};
}

NormStats fit_norm(std::span<const Descriptors> reference) {
  if (reference.empty()) throw EmptyReference("empty reference set");
  std::vector<double> lp, sa, ring;
  for (const Descriptors &d : reference) {
    lp.push_back(logp_raw(d));
    sa.push_back(sa_raw(d));
    ring.push_back(ring_penalty_raw(d));
  }
  return {mean_std(lp), mean_std(sa), mean_std(ring)};
}

NormStats fit_norm(std::span<const MolecularGraph> reference) {
  if (reference.empty()) throw EmptyReference("empty reference set");
  std::vector<Descriptors> d;
  d.reserve(reference.size());
  for (const MolecularGraph &g : reference) d.push_back(describe(g));
  return fit_norm(std::span<const Descriptors>(d));
}

PropertyRecord penalized_logp(const Descriptors &d, const NormStats &stats) {
  PropertyRecord r;
  r.logp_raw = logp_raw(d);
  r.sa_raw = sa_raw(d);
  r.ring_raw = ring_penalty_raw(d);
  r.qed = qed(d);
  r.logp_z = stats.logp.z(r.logp_raw);
  r.sa_z = stats.sa.z(r.sa_raw);
  r.ring_z = stats.ring.z(r.ring_raw);
  r.j = r.logp_z - r.sa_z - r.ring_z;
  return r;
}

}  // namespace gadmol
