//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef GADMOL_FINGERPRINT_HPP_
#define GADMOL_FINGERPRINT_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "gadmol/molgraph.hpp"

namespace gadmol {

class Fingerprint {
 public:
  explicit Fingerprint(int nbits = 1024)
      : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  int size() const noexcept { return nbits_; }
  void set(int bit) { words_[bit / 64] |= std::uint64_t{1} << (bit % 64); }
  bool test(int bit) const { return words_[bit / 64] >> (bit % 64) & 1; }
  int count() const noexcept;
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  friend bool operator==(const Fingerprint &, const Fingerprint &) = default;

 private:
  int nbits_;
  std::vector<std::uint64_t> words_;
};

// 64-bit FNV-1a.
std::uint64_t fnv1a(std::span<const std::uint8_t> bytes) noexcept;

// Circular (ECFP-style) fingerprint. Seeds are (element, degree, implicit H,
// ring membership); each iteration hashes the own invariant with the sorted
// (bond order, neighbor invariant) list. Every invariant of every radius
// sets bit (invariant mod nbits).
Fingerprint fingerprint(const MolecularGraph &g, int radius = 2,
                        int nbits = 1024);

// |a & b| / |a | b|; 1 when both are empty.
double tanimoto(const Fingerprint &a, const Fingerprint &b);

}  // namespace gadmol

#endif  // GADMOL_FINGERPRINT_HPP_
