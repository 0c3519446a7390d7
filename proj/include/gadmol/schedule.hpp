//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef GADMOL_SCHEDULE_HPP_
#define GADMOL_SCHEDULE_HPP_

#include <span>
#include <string_view>

namespace gadmol {

// Discriminator weight control. Constant mode always returns `beta`.
// Adaptive mode starts at `low`, switches to `high` once the best-ever
// score has gone `window` generations without improving by more than
// `epsilon`, and drops back to `low` right after the next such improvement.
struct BetaSchedule {
  enum class Mode { kConstant, kAdaptive };

  Mode mode = Mode::kConstant;
  double beta = 0.0;
  double low = 0.0;
  double high = 1000.0;
  int window = 20;
  double epsilon = 1e-3;

  static BetaSchedule constant(double beta) { return {Mode::kConstant, beta}; }
  static BetaSchedule adaptive(double low = 0.0, double high = 1000.0, int window = 20,
                               double epsilon = 1e-3) {
    return {Mode::kAdaptive, 0.0, low, high, window, epsilon};
  }

  // Weight for the step that produces generation `gen`, given the best-ever
  // score after each of the generations 0 .. gen-1. The adaptive state is
  // replayed from the history, so the result depends on nothing else.
  double next_beta(int gen, std::span<const double> best_history) const;
};

std::string_view schedule_mode_name(BetaSchedule::Mode m) noexcept;

}  // namespace gadmol

#endif  // GADMOL_SCHEDULE_HPP_
