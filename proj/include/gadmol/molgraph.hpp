//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef GADMOL_MOLGRAPH_HPP_
#define GADMOL_MOLGRAPH_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gadmol {

enum class Element : std::uint8_t { kC, kN, kO, kS, kP, kF };

inline constexpr int kNumElements = 6;

inline constexpr std::array<Element, kNumElements> kAllElements = {
    Element::kC, Element::kN, Element::kO,
    Element::kS, Element::kP, Element::kF};

// Maximum bond-order sum per element. Immutable.
constexpr int valence_cap(Element e) noexcept {
  constexpr std::array<int, kNumElements> caps = {4, 3, 2, 2, 3, 1};
  return caps[static_cast<int>(e)];
}

constexpr int element_index(Element e) noexcept { return static_cast<int>(e); }

std::string_view element_symbol(Element e) noexcept;

struct Bond {
  int a;
  int b;
  int order;

  friend bool operator==(const Bond &, const Bond &) = default;
};

struct Neighbor {
  int atom;
  int order;
  int bond;

  friend bool operator==(const Neighbor &, const Neighbor &) = default;
};

// Heavy-atom graph. Atoms are indexed densely in insertion order; hydrogens
// are implicit (cap minus bond-order sum). The container itself does not
// enforce chemical validity so that validate() can report on broken input.
class MolecularGraph {
 public:
  MolecularGraph() = default;

  int add_atom(Element e);
  int add_bond(int a, int b, int order);

  int num_atoms() const noexcept { return static_cast<int>(elements_.size()); }
  int num_bonds() const noexcept { return static_cast<int>(bonds_.size()); }
  bool empty() const noexcept { return elements_.empty(); }

  Element element(int atom) const { return elements_[atom]; }
  std::span<const Neighbor> neighbors(int atom) const { return adj_[atom]; }
  const std::vector<Bond> &bonds() const noexcept { return bonds_; }

  int degree(int atom) const { return static_cast<int>(adj_[atom].size()); }
  int bond_order_sum(int atom) const { return order_sum_[atom]; }
  int remaining_valence(int atom) const {
    return valence_cap(elements_[atom]) - order_sum_[atom];
  }
  int implicit_hydrogens(int atom) const {
    int h = remaining_valence(atom);
    return h > 0 ? h : 0;
  }

  // 0 when the atoms are not bonded.
  int bond_order(int a, int b) const;
  bool has_bond(int a, int b) const { return bond_order(a, b) != 0; }

  // Relabels atom i as perm[i].
  MolecularGraph permuted(std::span<const int> perm) const;

  friend bool operator==(const MolecularGraph &,
                         const MolecularGraph &) = default;

 private:
  std::vector<Element> elements_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<Neighbor>> adj_;
  std::vector<int> order_sum_;
};

MolecularGraph methane();

enum class ViolationKind { kValence, kDisconnected, kParallelBond, kSelfLoop,
                           kBondOrder };

struct Violation {
  ViolationKind kind;
  int atom;
  int other = -1;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
};

ValidationReport validate(const MolecularGraph &g);

bool is_connected(const MolecularGraph &g);

}  // namespace gadmol

#endif  // GADMOL_MOLGRAPH_HPP_
