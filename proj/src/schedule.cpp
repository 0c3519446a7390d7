//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "gadmol/schedule.hpp"

#include <stdexcept>

namespace gadmol {

double BetaSchedule::next_beta(int gen, std::span<const double> best_history) const {
  if (mode == Mode::kConstant) return beta;
  if (gen < 0 || static_cast<std::size_t>(gen) > best_history.size())
    throw std::invalid_argument("history shorter than generation index");
  if (gen == 0) return low;

  bool high_now = false;
  double reference = best_history[0];
  int stale = 0;
  for (int t = 1; t < gen; ++t) {
    if (best_history[t] > reference + epsilon) {
      reference = best_history[t];
      stale = 0;
      high_now = false;
    } else if (++stale >= window) {
      high_now = true;
    }
  }
  return high_now ? high : low;
}

std::string_view schedule_mode_name(BetaSchedule::Mode m) noexcept {
  return m == BetaSchedule::Mode::kConstant ? "constant" : "adaptive";
}

}  // namespace gadmol
