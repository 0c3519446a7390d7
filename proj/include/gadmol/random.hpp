//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef GADMOL_RANDOM_HPP_
#define GADMOL_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace gadmol {

// Seeded stream with portable draw helpers. std distributions are not used
// because their output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  int below_int(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

  // Standard normal via Box-Muller.
  double normal();

  // A fresh seed for an independent child stream.
  std::uint64_t split() { return mix(engine_()); }

  static std::uint64_t mix(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  // Seed for the index-th derived stream of a master seed.
  static std::uint64_t derive(std::uint64_t master, std::uint64_t index) noexcept {
    return mix(mix(master) ^ (index * 0xd1b54a32d192ed03ULL + 1));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gadmol

#endif  // GADMOL_RANDOM_HPP_
