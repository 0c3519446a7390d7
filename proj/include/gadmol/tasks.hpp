//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef GADMOL_TASKS_HPP_
#define GADMOL_TASKS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gadmol/config.hpp"
#include "gadmol/evolver.hpp"
#include "gadmol/fingerprint.hpp"
#include "gadmol/reference.hpp"
#include "gadmol/schedule.hpp"

namespace gadmol {

inline constexpr double kSimilarityPenalty = 1e6;

// j when sim > delta, else j - 1e6.
double constrained_fitness(double j, double sim, double delta);

// Sum of squared differences between raw properties and the target.
double target_squared_error(const PropertyRecord &props, const PropertyTarget &target);
// Negated squared error; 0 is the optimum.
double property_target_fitness(const PropertyRecord &props, const PropertyTarget &target);

// Affine map from literature-scale property ranges onto the surrogate
// ranges of a reference set.
struct TargetMapping {
  double logp_from_lo = -5.0, logp_from_hi = 10.0;
  double sa_from_lo = 1.0, sa_from_hi = 5.0;
  double ring_lo = 0.0, ring_hi = 3.0;  // used unchanged
  double logp_to_lo = 0.0, logp_to_hi = 0.0;
  double sa_to_lo = 0.0, sa_to_hi = 0.0;

  static TargetMapping fit(const ReferenceSet &ref);
  PropertyTarget map(double logp, double sa, double ring) const;
};

// `n` targets drawn uniformly from the literature ranges, then mapped.
std::vector<PropertyTarget> draw_property_targets(const TargetMapping &mapping, int n,
                                                  std::uint64_t seed);

struct EvolutionResult {
  std::vector<GenerationLog> logs;      // generation 0 .. last
  std::vector<double> best_history;     // best-ever objective per generation
  std::vector<double> beta_trace;       // beta used to produce generation t (t >= 1)
  std::vector<int> triggers;            // generations produced right after low -> high
  Archive archive;
  std::vector<Individual> final_population;
  std::string discriminator_json;  // final checkpoint, empty without one
  bool stopped_early = false;
};

struct EvolutionHooks {
  // Called after generation 0 and after every step.
  std::function<void(const Evolver &, const GenerationLog &)> on_generation;
  // Stops the run when it returns true.
  std::function<bool(const Evolver &)> stop;
};

// Runs `generations` steps under `schedule`, attaching a discriminator
// when `with_discriminator` is set.
EvolutionResult run_evolution(const RunConfig &cfg, const ReferenceSet &ref,
                              Objective objective, const BetaSchedule &schedule,
                              int generations, std::uint64_t seed,
                              std::span<const Genotype> initial = {},
                              bool with_discriminator = false,
                              const EvolutionHooks &hooks = {});

// Builds the discriminator setup used by the GA runs for `seed`.
DiscriminatorSetup make_discriminator(const RunConfig &cfg, const ReferenceSet &ref,
                                      std::uint64_t seed);

// ---- constrained improvement ----

struct ConstrainedResult {
  std::string reference;  // canonical text of the starting molecule
  double reference_j = 0.0;
  bool qualified = false;  // some molecule had sim > delta
  std::string best;        // best qualifying molecule
  std::string best_genotype;
  double best_j = 0.0;
  double similarity = 0.0;
  double improvement = 0.0;
  bool success = false;
  std::string error;  // set when the molecule was skipped
};

ConstrainedResult run_constrained(const RunConfig &cfg, const ReferenceSet &ref,
                                  const MolecularGraph &molecule, std::uint64_t seed);

// Starting molecules for the batch: the configured SMILES, or the `count`
// lowest-j encodable reference molecules.
std::vector<MolecularGraph> constrained_starting_set(const RunConfig &cfg,
                                                     const ReferenceSet &ref);

// ---- property targeting ----

struct PropertyTargetResult {
  PropertyTarget target;
  bool success = false;
  double squared_error = 0.0;
  std::string best;
  PropertyRecord best_props;
  int generations_run = 0;
};

PropertyTargetResult run_property_target(const RunConfig &cfg, const ReferenceSet &ref,
                                         const PropertyTarget &target, std::uint64_t seed);

// ---- random baseline ----

struct RandomBaselineResult {
  int n = 0;
  double max_j = 0.0;
  double mean_j = 0.0;
  double stddev_j = 0.0;
  std::string best;
  double hist_lo = 0.0, hist_hi = 0.0;
  std::vector<int> histogram;
};

// Sample i comes from its own stream derived from (seed, i); genotypes of
// up to `max_len` symbols are redrawn until the canonical text has at most
// `max_canonical_len` characters.
RandomBaselineResult run_random_baseline(int n, const NormStats &stats, std::uint64_t seed,
                                         int max_len = 81, int max_canonical_len = 81,
                                         int bins = 40, int threads = 1);

// ---- beta sweep ----

struct BetaSweepRow {
  double beta = 0.0;
  std::vector<double> mean_j_trace;  // averaged over seeds, per generation
  std::vector<double> mean_d_trace;
  std::vector<double> max_j_trace;
  double final_mean_j = 0.0;
  double late_mean_d = 0.0;  // mean D over the last quarter of generations
  double final_tanimoto = 0.0;
  std::vector<double> final_js;  // final population j of every seed
};

// Replicate s runs with seed + s, so replicate 0 matches an unconstrained
// run with the same seed and beta.
std::vector<BetaSweepRow> run_beta_sweep(const RunConfig &cfg, const ReferenceSet &ref);

// ---- orchestration ----

struct TaskOutput {
  std::string report_json;
  std::string hash;
};

// Loads the reference set named by the config.
ReferenceSet load_reference_for(const RunConfig &cfg);

// Runs the configured task, writes run_report.json and the per-task data
// files under the output directory, and returns the report and its
// determinism hash.
TaskOutput run_task(const RunConfig &cfg, const ReferenceSet &ref);

}  // namespace gadmol

#endif  // GADMOL_TASKS_HPP_
