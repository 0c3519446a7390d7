//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gadmol/rings.hpp"
#include "gadmol/smiles.hpp"

namespace gadmol {
namespace {

using Ranks = std::vector<int>;

// Past this many complete labelings the search keeps the best found so far.
constexpr int kLeafBudget = 2048;

int count_classes(const Ranks &rank) {
  std::vector<int> r = rank;
  std::sort(r.begin(), r.end());
  return static_cast<int>(std::unique(r.begin(), r.end()) - r.begin());
}

// Assigns each atom the number of atoms with a strictly smaller key.
template <typename Key>
Ranks ranks_from_keys(const std::vector<Key> &keys) {
  const int n = static_cast<int>(keys.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return keys[a] < keys[b]; });
  Ranks rank(n);
  for (int i = 0; i < n; ++i) {
    rank[idx[i]] = (i > 0 && !(keys[idx[i - 1]] < keys[idx[i]]))
                       ? rank[idx[i - 1]]
                       : i;
  }
  return rank;
}

void refine(const MolecularGraph &g, Ranks &rank) {
  const int n = g.num_atoms();
  int classes = count_classes(rank);
  std::vector<std::vector<int>> keys(n);
  while (classes < n) {
    for (int a = 0; a < n; ++a) {
      auto &k = keys[a];
      k.clear();
      k.push_back(rank[a]);
      for (const Neighbor &nb : g.neighbors(a)) k.push_back(nb.order * n + rank[nb.atom]);
      std::sort(k.begin() + 1, k.end());
    }
    Ranks next = ranks_from_keys(keys);
    const int next_classes = count_classes(next);
    rank = std::move(next);
    if (next_classes == classes) break;
    classes = next_classes;
  }
}

// Atoms with identical neighbor lists (atom + order) are interchangeable.
std::vector<int> twin_key(const MolecularGraph &g, int a) {
  std::vector<int> k;
  for (const Neighbor &nb : g.neighbors(a)) k.push_back(nb.atom * 4 + nb.order);
  std::sort(k.begin(), k.end());
  return k;
}

void search(const MolecularGraph &g, Ranks rank, std::string &best,
            int &leaves) {
  refine(g, rank);
  const int n = g.num_atoms();

  std::vector<int> count(n, 0);
  for (int r : rank) ++count[r];
  int cell = -1;
  for (int r = 0; r < n; ++r) {
    if (count[r] > 1) {
      cell = r;
      break;
    }
  }
  if (cell < 0) {
    std::string s = write_smiles(g, rank);
    if (best.empty() || s < best) best = std::move(s);
    ++leaves;
    return;
  }

  std::vector<std::vector<int>> tried;
  for (int a = 0; a < n; ++a) {
    if (rank[a] != cell) continue;
    std::vector<int> tk = twin_key(g, a);
    if (std::find(tried.begin(), tried.end(), tk) != tried.end()) continue;
    tried.push_back(std::move(tk));

    Ranks next = rank;
    for (int b = 0; b < n; ++b)
      if (b != a && rank[b] == cell) next[b] = cell + 1;
    search(g, std::move(next), best, leaves);
    if (leaves >= kLeafBudget) return;
  }
}

std::string ring_label(int digit) {
  if (digit < 10) return std::to_string(digit);
  return "%" + std::to_string(digit);
}

const char *bond_char(int order) {
  switch (order) {
    case 2:
      return "=";
    case 3:
      return "#";
    default:
      return "";
  }
}

}  // namespace

std::string write_smiles(const MolecularGraph &g, std::span<const int> rank) {
  const int n = g.num_atoms();
  if (n == 0) return {};

  int root = 0;
  for (int a = 1; a < n; ++a)
    if (rank[a] < rank[root]) root = a;

  std::vector<int> pos(n, -1), parent(n, -1);
  std::vector<std::vector<int>> children(n);
  // ring bonds: (earlier, later)
  std::vector<std::vector<int>> opens(n), closes(n);
  int t = 0;
  auto dfs = [&](auto &&self, int a) -> void {
    pos[a] = t++;
    std::vector<int> nbrs;
    for (const Neighbor &nb : g.neighbors(a)) nbrs.push_back(nb.atom);
    std::sort(nbrs.begin(), nbrs.end(),
              [&](int x, int y) { return rank[x] < rank[y]; });
    for (int b : nbrs) {
      if (b == parent[a]) continue;
      if (pos[b] < 0) {
        parent[b] = a;
        children[a].push_back(b);
        self(self, b);
      } else if (pos[b] < pos[a]) {
        opens[b].push_back(a);
        closes[a].push_back(b);
      }
    }
  };
  dfs(dfs, root);

  std::map<std::pair<int, int>, int> digit_of;  // (earlier, later) -> digit
  std::vector<char> in_use(100, 0);
  std::string out;

  auto emit = [&](auto &&self, int a) -> void {
    out += element_symbol(g.element(a));

    auto &cl = closes[a];
    std::sort(cl.begin(), cl.end(),
              [&](int x, int y) { return pos[x] < pos[y]; });
    std::vector<int> freed;
    for (int e : cl) {
      const int d = digit_of.at({e, a});
      out += ring_label(d);
      freed.push_back(d);
    }

    auto &op = opens[a];
    std::sort(op.begin(), op.end(),
              [&](int x, int y) { return pos[x] < pos[y]; });
    for (int l : op) {
      int d = 1;
      while (d < 100 && (in_use[d] || std::find(freed.begin(), freed.end(), d) !=
                                          freed.end()))
        ++d;
      in_use[d] = 1;
      digit_of[{a, l}] = d;
      out += bond_char(g.bond_order(a, l));
      out += ring_label(d);
    }
    for (int d : freed) in_use[d] = 0;

    const auto &kids = children[a];
    for (std::size_t k = 0; k < kids.size(); ++k) {
      const bool last = k + 1 == kids.size();
      if (!last) out += '(';
      out += bond_char(g.bond_order(a, kids[k]));
      self(self, kids[k]);
      if (!last) out += ')';
    }
  };
  emit(emit, root);
  return out;
}

std::string canonical(const MolecularGraph &g) {
  const int n = g.num_atoms();
  if (n == 0) return {};
  const std::vector<char> in_ring = ring_atoms(g);
  std::vector<std::array<int, 4>> keys(n);
  for (int a = 0; a < n; ++a) {
    keys[a] = {element_index(g.element(a)), g.degree(a), g.bond_order_sum(a),
               in_ring[a]};
  }
  Ranks rank = ranks_from_keys(keys);

  std::string best;
  int leaves = 0;
  search(g, std::move(rank), best, leaves);
  return best;
}

}  // namespace gadmol
