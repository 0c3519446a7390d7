//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gadmol/error.hpp"
#include "gadmol/smiles.hpp"

namespace gadmol {
namespace {

struct RawAtom {
  Element element;
  bool aromatic;
  std::size_t offset;
};

// order 0: unspecified (aromatic between two aromatic atoms, else single).
struct RawBond {
  int a;
  int b;
  int order;
};

struct OpenRing {
  int atom;
  int order;
  std::size_t offset;
};

class SmilesParser {
 public:
  explicit SmilesParser(std::string_view text) : text_(text) {}

  MolecularGraph parse() {
    while (i_ < text_.size()) step();
    if (pending_order_ != 0) throw SyntaxError("dangling bond", pending_offset_);
    if (!branches_.empty()) throw SyntaxError("unclosed branch", text_.size());
    if (!rings_.empty()) {
      throw SyntaxError("unclosed ring " + std::to_string(rings_.begin()->first),
                        rings_.begin()->second.offset);
    }
    if (atoms_.empty()) throw SyntaxError("no atoms", 0);
    return build();
  }

 private:
  void step() {
    const char c = text_[i_];
    switch (c) {
      case 'C':
        if (peek(1) == 'l') throw UnsupportedFeature("element Cl", i_);
        add_atom(Element::kC, false);
        return;
      case 'N':
        add_atom(Element::kN, false);
        return;
      case 'O':
        add_atom(Element::kO, false);
        return;
      case 'S':
        add_atom(Element::kS, false);
        return;
      case 'P':
        add_atom(Element::kP, false);
        return;
      case 'F':
        add_atom(Element::kF, false);
        return;
      case 'c':
        add_atom(Element::kC, true);
        return;
      case 'n':
        add_atom(Element::kN, true);
        return;
      case 'o':
        add_atom(Element::kO, true);
        return;
      case 's':
        add_atom(Element::kS, true);
        return;
      case '[':
        throw UnsupportedFeature("bracket atom", i_);
      case '-':
      case '=':
      case '#':
        if (pending_order_ != 0) throw SyntaxError("consecutive bonds", i_);
        pending_order_ = c == '-' ? 1 : c == '=' ? 2 : 3;
        pending_offset_ = i_++;
        return;
      case '/':
      case '\\':
      case '@':
        throw UnsupportedFeature("stereochemistry", i_);
      case ':':
      case '$':
        throw UnsupportedFeature("bond type", i_);
      case '.':
        throw UnsupportedFeature("disconnected structure", i_);
      case '+':
        throw UnsupportedFeature("charge", i_);
      case '(':
        if (prev_ < 0) throw SyntaxError("branch without atom", i_);
        if (pending_order_ != 0) throw SyntaxError("bond before branch", i_);
        branches_.push_back(prev_);
        ++i_;
        return;
      case ')':
        if (branches_.empty()) throw SyntaxError("unbalanced ')'", i_);
        if (pending_order_ != 0) throw SyntaxError("dangling bond", pending_offset_);
        prev_ = branches_.back();
        branches_.pop_back();
        ++i_;
        return;
      case '%': {
        if (!std::isdigit(static_cast<unsigned char>(peek(1))) ||
            !std::isdigit(static_cast<unsigned char>(peek(2))))
          throw SyntaxError("bad %nn ring label", i_);
        const int num = (peek(1) - '0') * 10 + (peek(2) - '0');
        ring_bond(num, i_);
        i_ += 3;
        return;
      }
      default:
        break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      if (c == '0') throw SyntaxError("ring label 0", i_);
      ring_bond(c - '0', i_);
      ++i_;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '*')
      throw UnsupportedFeature(std::string("element ") + c, i_);
    throw SyntaxError(std::string("unexpected character '") + c + "'", i_);
  }

  char peek(std::size_t k) const {
    return i_ + k < text_.size() ? text_[i_ + k] : '\0';
  }

  void add_atom(Element e, bool aromatic) {
    const int id = static_cast<int>(atoms_.size());
    atoms_.push_back({e, aromatic, i_});
    if (prev_ >= 0) {
      bonds_.push_back({prev_, id, pending_order_});
    } else if (pending_order_ != 0) {
      throw SyntaxError("bond before first atom", pending_offset_);
    }
    pending_order_ = 0;
    prev_ = id;
    ++i_;
  }

  void ring_bond(int num, std::size_t offset) {
    if (prev_ < 0) throw SyntaxError("ring label without atom", offset);
    auto it = rings_.find(num);
    if (it == rings_.end()) {
      rings_[num] = {prev_, pending_order_, offset};
      pending_order_ = 0;
      return;
    }
    const OpenRing open = it->second;
    rings_.erase(it);
    int order = open.order;
    if (pending_order_ != 0) {
      if (order != 0 && order != pending_order_)
        throw SyntaxError("conflicting ring bond orders", offset);
      order = pending_order_;
    }
    pending_order_ = 0;
    if (open.atom == prev_) throw SyntaxError("ring closure to self", offset);
    for (const RawBond &b : bonds_) {
      if ((b.a == open.atom && b.b == prev_) || (b.a == prev_ && b.b == open.atom))
        throw SyntaxError("duplicate ring bond", offset);
    }
    bonds_.push_back({open.atom, prev_, order});
  }

  MolecularGraph build() {
    const int n = static_cast<int>(atoms_.size());
    std::vector<int> order(bonds_.size());
    std::vector<char> aromatic_bond(bonds_.size(), 0);
    for (std::size_t k = 0; k < bonds_.size(); ++k) {
      const RawBond &b = bonds_[k];
      aromatic_bond[k] =
          b.order == 0 && atoms_[b.a].aromatic && atoms_[b.b].aromatic;
      order[k] = b.order == 0 ? 1 : b.order;
    }
    kekulize(aromatic_bond, order);

    MolecularGraph g;
    for (const RawAtom &a : atoms_) g.add_atom(a.element);
    for (std::size_t k = 0; k < bonds_.size(); ++k)
      g.add_bond(bonds_[k].a, bonds_[k].b, order[k]);
    for (int a = 0; a < n; ++a) {
      if (g.bond_order_sum(a) > valence_cap(g.element(a))) {
        throw UnsupportedFeature(
            "valence of " + std::string(element_symbol(g.element(a))) +
                " exceeds " + std::to_string(valence_cap(g.element(a))),
            atoms_[a].offset);
      }
    }
    return g;
  }

  // Perfect matching over aromatic atoms that still need a double bond.
  void kekulize(const std::vector<char> &aromatic_bond, std::vector<int> &order) {
    const int n = static_cast<int>(atoms_.size());
    std::vector<int> used(n, 0);
    for (std::size_t k = 0; k < bonds_.size(); ++k) {
      used[bonds_[k].a] += order[k];
      used[bonds_[k].b] += order[k];
    }
    std::vector<char> needs(n, 0);
    bool any = false;
    for (int a = 0; a < n; ++a) {
      if (!atoms_[a].aromatic) continue;
      if (atoms_[a].element == Element::kO || atoms_[a].element == Element::kS)
        continue;
      needs[a] = valence_cap(atoms_[a].element) - used[a] >= 1;
      any = any || needs[a];
    }
    if (!any) return;

    std::vector<std::vector<std::pair<int, int>>> options(n);  // (atom, bond)
    for (std::size_t k = 0; k < bonds_.size(); ++k) {
      if (!aromatic_bond[k]) continue;
      const int a = bonds_[k].a, b = bonds_[k].b;
      if (needs[a] && needs[b]) {
        options[a].push_back({b, static_cast<int>(k)});
        options[b].push_back({a, static_cast<int>(k)});
      }
    }
    std::vector<int> mate(n, -1);
    std::vector<int> chosen;

    auto solve = [&](auto &&self) -> bool {
      // Most constrained unmatched atom first.
      int pick = -1;
      std::size_t best = SIZE_MAX;
      for (int a = 0; a < n; ++a) {
        if (!needs[a] || mate[a] >= 0) continue;
        std::size_t free = 0;
        for (auto [b, k] : options[a]) free += mate[b] < 0;
        if (free < best) {
          best = free;
          pick = a;
        }
      }
      if (pick < 0) return true;
      for (auto [b, k] : options[pick]) {
        if (mate[b] >= 0) continue;
        mate[pick] = b;
        mate[b] = pick;
        chosen.push_back(k);
        if (self(self)) return true;
        chosen.pop_back();
        mate[pick] = mate[b] = -1;
      }
      return false;
    };
    if (!solve(solve)) {
      throw KekulizationFailure("no alternating bond assignment for aromatic system");
    }
    for (int k : chosen) order[k] = 2;
  }

  std::string_view text_;
  std::size_t i_ = 0;
  int prev_ = -1;
  int pending_order_ = 0;
  std::size_t pending_offset_ = 0;
  std::vector<int> branches_;
  std::map<int, OpenRing> rings_;
  std::vector<RawAtom> atoms_;
  std::vector<RawBond> bonds_;
};

}  // namespace

MolecularGraph parse_smiles(std::string_view text) {
  return SmilesParser(text).parse();
}

}  // namespace gadmol
