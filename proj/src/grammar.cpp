//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "gadmol/grammar.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "gadmol/error.hpp"

namespace gadmol {
namespace {

constexpr std::array<std::string_view, kNumSymbols> kSymbolText = {
    "[C]", "[=C]", "[#C]", "[N]", "[=N]", "[#N]", "[O]", "[=O]",
    "[S]", "[=S]", "[P]", "[F]", "[Branch1]", "[Branch2]", "[Ring1]",
    "[Ring2]"};

constexpr std::array<AtomSymbolInfo, 12> kAtomInfo = {{
    {Element::kC, 1},
    {Element::kC, 2},
    {Element::kC, 3},
    {Element::kN, 1},
    {Element::kN, 2},
    {Element::kN, 3},
    {Element::kO, 1},
    {Element::kO, 2},
    {Element::kS, 1},
    {Element::kS, 2},
    {Element::kP, 1},
    {Element::kF, 1},
}};

// Left-to-right derivation over a span of symbols, rooted at `current`.
class Derivation {
 public:
  explicit Derivation(std::span<const Symbol> symbols) : symbols_(symbols) {}

  MolecularGraph run() && {
    derive(0, symbols_.size(), -1);
    if (graph_.empty()) graph_.add_atom(Element::kC);
    return std::move(graph_);
  }

 private:
  void derive(std::size_t begin, std::size_t end, int current) {
    std::size_t i = begin;
    while (i < end) {
      const Symbol sym = symbols_[i];
      if (is_atom_symbol(sym)) {
        const AtomSymbolInfo info = atom_symbol_info(sym);
        if (graph_.empty()) {
          current = graph_.add_atom(info.element);
          ++i;
          continue;
        }
        const int rem = graph_.remaining_valence(current);
        if (rem <= 0) return;
        const int order =
            std::min({info.requested_order, rem, valence_cap(info.element)});
        const int atom = graph_.add_atom(info.element);
        graph_.add_bond(current, atom, order);
        current = atom;
        ++i;
        continue;
      }

      const bool wide = sym == Symbol::kBranch2 || sym == Symbol::kRing2;
      const std::size_t nidx = wide ? 2 : 1;
      if (i + nidx >= end) return;  // index symbols missing: ignored
      int value = symbol_index(symbols_[i + 1]);
      if (wide) value = 16 * value + symbol_index(symbols_[i + 2]);

      if (sym == Symbol::kBranch1 || sym == Symbol::kBranch2) {
        const std::size_t body_begin = i + 1 + nidx;
        const std::size_t body_end =
            std::min(end, body_begin + static_cast<std::size_t>(value) + 1);
        if (current >= 0 && graph_.remaining_valence(current) >= 2) {
          derive(body_begin, body_end, current);
        }
        i = body_end;
      } else {
        close_ring(current, value + 2);
        i += 1 + nidx;
      }
    }
  }

  void close_ring(int current, int offset) {
    if (current < 0) return;
    const int target = std::max(0, current - offset);
    if (target == current) return;
    if (graph_.remaining_valence(current) <= 0 ||
        graph_.remaining_valence(target) <= 0)
      return;
    if (graph_.has_bond(current, target)) return;
    graph_.add_bond(current, target, 1);
  }

  std::span<const Symbol> symbols_;
  MolecularGraph graph_;
};

// ---- encoder ----------------------------------------------------------------

struct Traversal {
  std::vector<int> preorder;              // atoms in placement order
  std::vector<int> position;              // atom -> placement index
  std::vector<int> parent;                // -1 for root
  std::vector<int> parent_order;
  std::vector<std::vector<int>> children;  // in visit order
  std::vector<std::vector<int>> closures;  // earlier-placed partners
};

bool tree_edge_encodable(Element child, int order) {
  return atom_symbol_for(child, order).has_value();
}

Traversal traverse(const MolecularGraph &g, int root, bool reverse_ties) {
  const int n = g.num_atoms();
  Traversal t;
  t.position.assign(n, -1);
  t.parent.assign(n, -1);
  t.parent_order.assign(n, 0);
  t.children.resize(n);
  t.closures.resize(n);

  // Prefer encodable tree edges and higher bond orders so that every ring
  // closure (always single) lands on a single bond.
  auto visit = [&](auto &&self, int atom) -> void {
    t.position[atom] = static_cast<int>(t.preorder.size());
    t.preorder.push_back(atom);
    for (const Neighbor &nb : g.neighbors(atom)) {
      if (nb.atom != t.parent[atom] && t.position[nb.atom] >= 0) {
        t.closures[atom].push_back(nb.atom);
      }
    }
    std::vector<Neighbor> order(g.neighbors(atom).begin(),
                                g.neighbors(atom).end());
    std::sort(order.begin(), order.end(),
              [&](const Neighbor &x, const Neighbor &y) {
                const bool ex = tree_edge_encodable(g.element(x.atom), x.order);
                const bool ey = tree_edge_encodable(g.element(y.atom), y.order);
                if (ex != ey) return ex;
                if (x.order != y.order) return x.order > y.order;
                return reverse_ties ? x.atom > y.atom : x.atom < y.atom;
              });
    for (const Neighbor &nb : order) {
      if (t.position[nb.atom] >= 0) continue;
      t.parent[nb.atom] = atom;
      t.parent_order[nb.atom] = nb.order;
      t.children[atom].push_back(nb.atom);
      self(self, nb.atom);
    }
  };
  visit(visit, root);
  return t;
}

void push_index(std::vector<Symbol> &out, int value, bool wide) {
  if (wide) {
    out.push_back(symbol_from_index(value / 16));
    out.push_back(symbol_from_index(value % 16));
  } else {
    out.push_back(symbol_from_index(value));
  }
}

// Returns false when some part of the traversal cannot be expressed.
bool emit(const MolecularGraph &g, const Traversal &t, int atom,
          std::vector<Symbol> &out) {
  const int order = t.parent[atom] < 0 ? 1 : t.parent_order[atom];
  const auto sym = atom_symbol_for(g.element(atom), order);
  if (!sym) return false;
  out.push_back(*sym);

  for (int partner : t.closures[atom]) {
    if (g.bond_order(atom, partner) != 1) return false;
    const int offset = t.position[atom] - t.position[partner];
    if (offset < 2 || offset > 257) return false;
    const bool wide = offset > 17;
    out.push_back(wide ? Symbol::kRing2 : Symbol::kRing1);
    push_index(out, offset - 2, wide);
  }

  const auto &kids = t.children[atom];
  for (std::size_t k = 0; k < kids.size(); ++k) {
    if (k + 1 == kids.size()) return emit(g, t, kids[k], out);
    std::vector<Symbol> body;
    if (!emit(g, t, kids[k], body)) return false;
    const int len = static_cast<int>(body.size());
    if (len > 256) return false;
    const bool wide = len > 16;
    out.push_back(wide ? Symbol::kBranch2 : Symbol::kBranch1);
    push_index(out, len - 1, wide);
    out.insert(out.end(), body.begin(), body.end());
  }
  return true;
}

// Placement order of decode equals the traversal preorder, so the check is
// an exact comparison under that relabeling.
bool reproduces(const MolecularGraph &g, const Traversal &t,
                const Genotype &genotype) {
  const MolecularGraph back = decode(genotype);
  if (back.num_atoms() != g.num_atoms() || back.num_bonds() != g.num_bonds())
    return false;
  for (int i = 0; i < back.num_atoms(); ++i) {
    if (back.element(i) != g.element(t.preorder[i])) return false;
  }
  for (const Bond &b : back.bonds()) {
    if (g.bond_order(t.preorder[b.a], t.preorder[b.b]) != b.order) return false;
  }
  return true;
}

}  // namespace

AtomSymbolInfo atom_symbol_info(Symbol s) {
  if (!is_atom_symbol(s)) throw std::invalid_argument("not an atom symbol");
  return kAtomInfo[symbol_index(s)];
}

std::optional<Symbol> atom_symbol_for(Element e, int order) {
  for (int i = 0; i < static_cast<int>(kAtomInfo.size()); ++i) {
    if (kAtomInfo[i].element == e && kAtomInfo[i].requested_order == order)
      return symbol_from_index(i);
  }
  return std::nullopt;
}

std::string_view symbol_text(Symbol s) noexcept {
  return kSymbolText[symbol_index(s)];
}

Genotype::Genotype(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw std::invalid_argument("empty genotype");
}

std::string Genotype::to_string() const {
  std::string out;
  for (Symbol s : symbols_) out += symbol_text(s);
  return out;
}

Genotype parse_genotype(std::string_view text) {
  std::vector<Symbol> symbols;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '[') throw SyntaxError("expected '['", i);
    const std::size_t close = text.find(']', i);
    if (close == std::string_view::npos)
      throw SyntaxError("unterminated symbol", i);
    const std::string_view token = text.substr(i, close - i + 1);
    const auto it = std::find(kSymbolText.begin(), kSymbolText.end(), token);
    if (it == kSymbolText.end())
      throw SyntaxError("unknown symbol " + std::string(token), i);
    symbols.push_back(symbol_from_index(static_cast<int>(it - kSymbolText.begin())));
    i = close + 1;
  }
  if (symbols.empty()) throw SyntaxError("empty genotype", 0);
  return Genotype(std::move(symbols));
}

MolecularGraph decode(const Genotype &g) {
  return Derivation(g.symbols()).run();
}

Genotype encode(const MolecularGraph &g) {
  if (g.empty()) throw UnencodableGraph("empty graph");
  if (!validate(g).ok()) throw UnencodableGraph("graph is not valence-valid");

  // Roots: atoms whose incoming multiple bonds have no symbol (e.g. P=X)
  // first, then terminal atoms.
  std::vector<int> roots(g.num_atoms());
  for (int i = 0; i < g.num_atoms(); ++i) roots[i] = i;
  auto awkward = [&](int a) {
    for (const Neighbor &nb : g.neighbors(a))
      if (!tree_edge_encodable(g.element(a), nb.order)) return true;
    return false;
  };
  std::stable_sort(roots.begin(), roots.end(), [&](int x, int y) {
    const bool ax = awkward(x), ay = awkward(y);
    if (ax != ay) return ax;
    return g.degree(x) < g.degree(y);
  });

  for (int root : roots) {
    for (bool reverse_ties : {false, true}) {
      const Traversal t = traverse(g, root, reverse_ties);
      std::vector<Symbol> out;
      if (!emit(g, t, root, out)) continue;
      Genotype genotype(std::move(out));
      if (reproduces(g, t, genotype)) return genotype;
    }
  }
  throw UnencodableGraph("no depth-first traversal is expressible");
}

Genotype random_genotype(Rng &rng, int max_len) {
  if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
  const int len = 1 + rng.below_int(max_len);
  std::vector<Symbol> symbols(len);
  for (auto &s : symbols) s = symbol_from_index(rng.below_int(kNumSymbols));
  return Genotype(std::move(symbols));
}

}  // namespace gadmol
