//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef GADMOL_CONFIG_HPP_
#define GADMOL_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gadmol/discriminator.hpp"
#include "gadmol/evolver.hpp"
#include "gadmol/schedule.hpp"

namespace gadmol {

enum class TaskKind {
  kUnconstrained,
  kAdaptiveDt,
  kConstrainedSimilarity,
  kPropertyTarget,
  kLogpQed,
  kRandomBaseline,
  kBetaSweep,
};

std::string_view task_name(TaskKind t) noexcept;
std::optional<TaskKind> task_from_name(std::string_view name) noexcept;

// Property targets in surrogate (raw) units.
struct PropertyTarget {
  double logp = 0.0;
  double sa = 0.0;
  double ring = 0.0;
};

struct RunConfig {
  TaskKind task = TaskKind::kUnconstrained;
  std::uint64_t seed = 1;

  // Execution settings; echoed in the report but outside the determinism hash.
  int threads = 1;
  std::string output_dir;  // empty: $GADMOL_OUTPUT_DIR, else "gadmol-out"

  struct Reference {
    std::string path;   // empty: the bundled reference set
    int synthetic = 0;  // > 0: use this many synthetic molecules instead
  } reference;

  EvolverOptions evolver;  // `threads` is taken from the field above
  int generations = 100;
  int snapshot_every = 0;  // 0: no population snapshots

  // "auto" resolves to adaptive for adaptive_dt and constant otherwise.
  struct Schedule {
    std::string mode = "auto";
    double beta = 0.0;
    double low = 0.0;
    double high = 1000.0;
    int window = 20;
    double epsilon = 1e-3;
  } schedule;

  struct Disc {
    bool enabled = true;
    int epochs = 10;
    int batch_size = 32;
    double learning_rate = 1e-3;
  } discriminator;

  struct Constrained {
    std::vector<std::string> molecules;  // SMILES; empty: lowest-j reference molecules
    int count = 50;
    double delta = 0.4;
    int generations = 20;
  } constrained;

  struct Target {
    std::vector<PropertyTarget> targets;  // empty: `count` random targets
    int count = 100;
    double threshold = 1.0;
    bool early_stop = true;
  } property_target;

  struct LogpQed {
    double weight_j = 1.0;
    double weight_qed = 10.0;
  } logp_qed;

  struct Baseline {
    int n = 50000;
    int max_len = 81;
    int bins = 40;
  } random_baseline;

  struct Sweep {
    std::vector<double> betas = {0.0, 10.0, 50.0};
    int seeds = 3;
  } beta_sweep;

  // Concrete schedule after resolving "auto".
  BetaSchedule resolved_schedule() const;
  TrainOptions train_options() const;
  EvolverOptions evolver_options() const;  // with threads applied
  std::string resolved_output_dir() const;
  std::string resolved_reference_path() const;
};

// Strict parse: unknown keys, wrong types and out-of-range values throw
// ConfigError naming the offending key.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::string &path);

// Every field, defaults included. With `include_execution` false the
// threads and output_dir fields are left out.
std::string config_to_json(const RunConfig &cfg, bool include_execution = true);

void validate(const RunConfig &cfg);

}  // namespace gadmol

#endif  // GADMOL_CONFIG_HPP_
