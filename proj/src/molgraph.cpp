//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "gadmol/molgraph.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace gadmol {

std::string_view element_symbol(Element e) noexcept {
  constexpr std::array<std::string_view, kNumElements> symbols = {
      "C", "N", "O", "S", "P", "F"};
  return symbols[static_cast<int>(e)];
}

int MolecularGraph::add_atom(Element e) {
  elements_.push_back(e);
  adj_.emplace_back();
  order_sum_.push_back(0);
  return num_atoms() - 1;
}

int MolecularGraph::add_bond(int a, int b, int order) {
  const int id = num_bonds();
  bonds_.push_back({std::min(a, b), std::max(a, b), order});
  adj_[a].push_back({b, order, id});
  order_sum_[a] += order;
  if (a != b) {
    adj_[b].push_back({a, order, id});
    order_sum_[b] += order;
  }
  return id;
}

int MolecularGraph::bond_order(int a, int b) const {
  const auto &small = adj_[a].size() <= adj_[b].size() ? adj_[a] : adj_[b];
  const int other = adj_[a].size() <= adj_[b].size() ? b : a;
  for (const Neighbor &n : small) {
    if (n.atom == other) return n.order;
  }
  return 0;
}

MolecularGraph MolecularGraph::permuted(std::span<const int> perm) const {
  std::vector<int> inverse(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inverse[perm[i]] = static_cast<int>(i);

  MolecularGraph out;
  for (int i = 0; i < num_atoms(); ++i) out.add_atom(elements_[inverse[i]]);
  for (const Bond &b : bonds_) out.add_bond(perm[b.a], perm[b.b], b.order);
  return out;
}

MolecularGraph methane() {
  MolecularGraph g;
  g.add_atom(Element::kC);
  return g;
}

bool is_connected(const MolecularGraph &g) {
  const int n = g.num_atoms();
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int a = stack.back();
    stack.pop_back();
    for (const Neighbor &nb : g.neighbors(a)) {
      if (!seen[nb.atom]) {
        seen[nb.atom] = 1;
        ++count;
        stack.push_back(nb.atom);
      }
    }
  }
  return count == n;
}

ValidationReport validate(const MolecularGraph &g) {
  ValidationReport report;
  const int n = g.num_atoms();

  for (int i = 0; i < n; ++i) {
    if (g.bond_order_sum(i) > valence_cap(g.element(i))) {
      report.violations.push_back(
          {ViolationKind::kValence, i, -1,
           "atom " + std::to_string(i) + " (" +
               std::string(element_symbol(g.element(i))) + ") has bond sum " +
               std::to_string(g.bond_order_sum(i)) + " > cap " +
               std::to_string(valence_cap(g.element(i)))});
    }
  }

  std::set<std::pair<int, int>> seen;
  for (const Bond &b : g.bonds()) {
    if (b.a == b.b) {
      report.violations.push_back({ViolationKind::kSelfLoop, b.a, b.b,
                                   "self-loop on atom " + std::to_string(b.a)});
      continue;
    }
    if (b.order < 1 || b.order > 3) {
      report.violations.push_back({ViolationKind::kBondOrder, b.a, b.b,
                                   "bond order " + std::to_string(b.order)});
    }
    if (!seen.insert({b.a, b.b}).second) {
      report.violations.push_back(
          {ViolationKind::kParallelBond, b.a, b.b,
           "parallel bond " + std::to_string(b.a) + "-" + std::to_string(b.b)});
    }
  }

  if (n > 0 && !is_connected(g)) {
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (int s = 0; s < n; ++s) {
      if (comp[s] >= 0) continue;
      std::vector<int> stack = {s};
      comp[s] = ncomp;
      while (!stack.empty()) {
        const int a = stack.back();
        stack.pop_back();
        for (const Neighbor &nb : g.neighbors(a)) {
          if (comp[nb.atom] < 0) {
            comp[nb.atom] = ncomp;
            stack.push_back(nb.atom);
          }
        }
      }
      if (ncomp > 0) {
        report.violations.push_back(
            {ViolationKind::kDisconnected, s, -1,
             "atom " + std::to_string(s) + " starts disconnected component " +
                 std::to_string(ncomp)});
      }
      ++ncomp;
    }
  }
  return report;
}

}  // namespace gadmol
