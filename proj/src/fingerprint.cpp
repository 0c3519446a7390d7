//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "gadmol/fingerprint.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <utility>

#include "gadmol/rings.hpp"

namespace gadmol {
namespace {

void put_u64(std::vector<std::uint8_t> &out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

}  // namespace

int Fingerprint::count() const noexcept {
  int c = 0;
  for (std::uint64_t w : words_) c += std::popcount(w);
  return c;
}

std::uint64_t fnv1a(std::span<const std::uint8_t> bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Fingerprint fingerprint(const MolecularGraph &g, int radius, int nbits) {
  if (nbits <= 0) throw std::invalid_argument("nbits must be positive");
  Fingerprint fp(nbits);
  const int n = g.num_atoms();
  const std::vector<char> in_ring = ring_atoms(g);

  std::vector<std::uint64_t> inv(n);
  std::vector<std::uint8_t> bytes;
  for (int a = 0; a < n; ++a) {
    bytes = {static_cast<std::uint8_t>(element_index(g.element(a))),
             static_cast<std::uint8_t>(g.degree(a)),
             static_cast<std::uint8_t>(g.implicit_hydrogens(a)),
             static_cast<std::uint8_t>(in_ring[a])};
    inv[a] = fnv1a(bytes);
    fp.set(static_cast<int>(inv[a] % static_cast<std::uint64_t>(nbits)));
  }

  std::vector<std::uint64_t> next(n);
  std::vector<std::pair<int, std::uint64_t>> env;
  for (int r = 1; r <= radius; ++r) {
    for (int a = 0; a < n; ++a) {
      env.clear();
      for (const Neighbor &nb : g.neighbors(a)) env.emplace_back(nb.order, inv[nb.atom]);
      std::sort(env.begin(), env.end());
      bytes.clear();
      put_u64(bytes, inv[a]);
      for (const auto &[order, v] : env) {
        bytes.push_back(static_cast<std::uint8_t>(order));
        put_u64(bytes, v);
      }
      next[a] = fnv1a(bytes);
      fp.set(static_cast<int>(next[a] % static_cast<std::uint64_t>(nbits)));
    }
    inv.swap(next);
  }
  return fp;
}

double tanimoto(const Fingerprint &a, const Fingerprint &b) {
  if (a.size() != b.size()) throw std::invalid_argument("fingerprint sizes differ");
  int both = 0, either = 0;
  const auto wa = a.words(), wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    both += std::popcount(wa[i] & wb[i]);
    either += std::popcount(wa[i] | wb[i]);
  }
  if (either == 0) return 1.0;
  return static_cast<double>(both) / either;
}

}  // namespace gadmol
