//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "gadmol/rings.hpp"

#include <algorithm>
#include <cstdint>
#include <queue>
#include <set>
#include <utility>
#include <vector>

namespace gadmol {
namespace {

using BitRow = std::vector<std::uint64_t>;

BitRow bond_row(const Cycle &c, int nbonds) {
  BitRow row((nbonds + 63) / 64, 0);
  for (int b : c.bonds) row[b / 64] ^= std::uint64_t{1} << (b % 64);
  return row;
}

// Incremental GF(2) elimination keyed by pivot bit.
class CycleSpaceBasis {
 public:
  explicit CycleSpaceBasis(int nbonds) : nbonds_(nbonds) {}

  bool insert(BitRow row) {
    for (const auto &[pivot, basis_row] : rows_) {
      if (row[pivot / 64] >> (pivot % 64) & 1) {
        for (std::size_t w = 0; w < row.size(); ++w) row[w] ^= basis_row[w];
      }
    }
    for (int bit = 0; bit < nbonds_; ++bit) {
      if (row[bit / 64] >> (bit % 64) & 1) {
        // Keep existing rows reduced against the new pivot.
        for (auto &[p, r] : rows_) {
          if (r[bit / 64] >> (bit % 64) & 1)
            for (std::size_t w = 0; w < r.size(); ++w) r[w] ^= row[w];
        }
        rows_.emplace_back(bit, std::move(row));
        return true;
      }
    }
    return false;
  }

  int size() const noexcept { return static_cast<int>(rows_.size()); }

 private:
  int nbonds_;
  std::vector<std::pair<int, BitRow>> rows_;
};

// BFS shortest path from `from` to `to` avoiding bond `skip`; atoms in order.
std::vector<int> shortest_path(const MolecularGraph &g, int from, int to,
                               int skip) {
  std::vector<int> prev(g.num_atoms(), -2);
  std::queue<int> q;
  q.push(from);
  prev[from] = -1;
  while (!q.empty()) {
    const int a = q.front();
    q.pop();
    if (a == to) break;
    for (const Neighbor &nb : g.neighbors(a)) {
      if (nb.bond == skip || prev[nb.atom] != -2) continue;
      prev[nb.atom] = a;
      q.push(nb.atom);
    }
  }
  if (prev[to] == -2) return {};
  std::vector<int> path;
  for (int a = to; a != -1; a = prev[a]) path.push_back(a);
  std::reverse(path.begin(), path.end());
  return path;
}

int bond_between(const MolecularGraph &g, int a, int b) {
  for (const Neighbor &nb : g.neighbors(a))
    if (nb.atom == b) return nb.bond;
  return -1;
}

Cycle cycle_from_atoms(const MolecularGraph &g, std::vector<int> atoms) {
  Cycle c;
  c.atoms = std::move(atoms);
  for (std::size_t i = 0; i < c.atoms.size(); ++i) {
    const int a = c.atoms[i];
    const int b = c.atoms[(i + 1) % c.atoms.size()];
    c.bonds.push_back(bond_between(g, a, b));
  }
  return c;
}

std::vector<int> sorted_bonds(const Cycle &c) {
  std::vector<int> b = c.bonds;
  std::sort(b.begin(), b.end());
  return b;
}

void add_candidate(std::vector<Cycle> &out, std::set<std::vector<int>> &seen,
                   Cycle c) {
  if (seen.insert(sorted_bonds(c)).second) out.push_back(std::move(c));
}

void sort_candidates(std::vector<Cycle> &cands) {
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Cycle &x, const Cycle &y) {
                     if (x.size() != y.size()) return x.size() < y.size();
                     return sorted_bonds(x) < sorted_bonds(y);
                   });
}

int component_count(const MolecularGraph &g) {
  std::vector<char> seen(g.num_atoms(), 0);
  int count = 0;
  for (int s = 0; s < g.num_atoms(); ++s) {
    if (seen[s]) continue;
    ++count;
    std::vector<int> stack = {s};
    seen[s] = 1;
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      for (const Neighbor &nb : g.neighbors(a)) {
        if (!seen[nb.atom]) {
          seen[nb.atom] = 1;
          stack.push_back(nb.atom);
        }
      }
    }
  }
  return count;
}

}  // namespace

std::vector<Cycle> rings(const MolecularGraph &g) {
  const int nbonds = g.num_bonds();
  const int rank = nbonds - g.num_atoms() + component_count(g);
  if (rank <= 0) return {};

  std::vector<Cycle> basis;
  CycleSpaceBasis space(nbonds);
  std::set<std::vector<int>> seen;

  std::vector<Cycle> cands;
  for (int e = 0; e < nbonds; ++e) {
    const Bond &b = g.bonds()[e];
    if (b.a == b.b) continue;
    std::vector<int> path = shortest_path(g, b.a, b.b, e);
    if (path.size() < 2) continue;
    add_candidate(cands, seen, cycle_from_atoms(g, std::move(path)));
  }
  sort_candidates(cands);
  for (Cycle &c : cands) {
    if (space.size() == rank) break;
    if (space.insert(bond_row(c, nbonds))) basis.push_back(std::move(c));
  }
  if (space.size() == rank) return basis;

  // Horton candidates: x -> u, bond (u,v), v -> x along BFS trees.
  std::vector<Cycle> horton;
  for (int x = 0; x < g.num_atoms(); ++x) {
    std::vector<int> prev(g.num_atoms(), -2);
    std::queue<int> q;
    q.push(x);
    prev[x] = -1;
    while (!q.empty()) {
      const int a = q.front();
      q.pop();
      for (const Neighbor &nb : g.neighbors(a)) {
        if (prev[nb.atom] == -2) {
          prev[nb.atom] = a;
          q.push(nb.atom);
        }
      }
    }
    auto path_to = [&](int t) {
      std::vector<int> p;
      for (int a = t; a != -1; a = prev[a]) p.push_back(a);
      return p;  // t ... x
    };
    for (const Bond &b : g.bonds()) {
      if (prev[b.a] == -2 || prev[b.b] == -2) continue;
      if (prev[b.a] == b.b || prev[b.b] == b.a) continue;
      std::vector<int> pu = path_to(b.a);
      std::vector<int> pv = path_to(b.b);
      std::set<int> su(pu.begin(), pu.end());
      int shared = 0;
      for (int a : pv) shared += su.count(a);
      if (shared != 1) continue;
      // x ... u, then v ... (excluding x)
      std::vector<int> atoms(pu.rbegin(), pu.rend());
      for (std::size_t i = 0; i + 1 < pv.size(); ++i) atoms.push_back(pv[i]);
      add_candidate(horton, seen, cycle_from_atoms(g, std::move(atoms)));
    }
  }
  // Earlier candidates were already exhausted; merge and retry in order.
  horton.insert(horton.end(), cands.begin(), cands.end());
  sort_candidates(horton);
  std::vector<Cycle> merged;
  CycleSpaceBasis space2(nbonds);
  for (Cycle &c : horton) {
    if (space2.size() == rank) break;
    if (space2.insert(bond_row(c, nbonds))) merged.push_back(std::move(c));
  }
  return merged;
}

std::vector<char> ring_atoms(const MolecularGraph &g) {
  const int n = g.num_atoms();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<char> in_ring(n, 0);
  int timer = 0;
  auto dfs = [&](auto &&self, int a, int parent_bond) -> void {
    disc[a] = low[a] = timer++;
    for (const Neighbor &nb : g.neighbors(a)) {
      if (nb.bond == parent_bond) continue;
      if (disc[nb.atom] >= 0) {
        low[a] = std::min(low[a], disc[nb.atom]);
      } else {
        self(self, nb.atom, nb.bond);
        low[a] = std::min(low[a], low[nb.atom]);
        if (low[nb.atom] <= disc[a]) {
          in_ring[a] = 1;
          in_ring[nb.atom] = 1;
        }
      }
    }
  };
  for (int s = 0; s < n; ++s)
    if (disc[s] < 0) dfs(dfs, s, -1);
  return in_ring;
}

std::vector<char> atoms_in_small_unsaturated_ring(const MolecularGraph &g,
                                                  int max_size) {
  const int n = g.num_atoms();
  std::vector<char> mark(n, 0);
  std::vector<char> on_path(n, 0);
  std::vector<int> path;

  // Enumerate simple paths from b.b back to b.a avoiding the double bond.
  for (int e = 0; e < g.num_bonds(); ++e) {
    const Bond &bond = g.bonds()[e];
    if (bond.order != 2 || bond.a == bond.b) continue;
    auto extend = [&](auto &&self, int a) -> void {
      if (a == bond.a) {
        if (path.size() >= 3)
          for (int p : path) mark[p] = 1;
        return;
      }
      if (static_cast<int>(path.size()) >= max_size) return;
      for (const Neighbor &nb : g.neighbors(a)) {
        if (nb.bond == e || on_path[nb.atom]) continue;
        on_path[nb.atom] = 1;
        path.push_back(nb.atom);
        self(self, nb.atom);
        path.pop_back();
        on_path[nb.atom] = 0;
      }
    };
    path.assign(1, bond.b);
    on_path.assign(n, 0);
    on_path[bond.b] = 1;
    extend(extend, bond.b);
  }
  return mark;
}

}  // namespace gadmol
