//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef GADMOL_EVOLVER_HPP_
#define GADMOL_EVOLVER_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "gadmol/discriminator.hpp"
#include "gadmol/grammar.hpp"
#include "gadmol/molgraph.hpp"
#include "gadmol/properties.hpp"
#include "gadmol/random.hpp"

namespace gadmol {

struct Individual {
  Genotype genotype;
  MolecularGraph graph;
  std::string canonical;
  PropertyRecord props;
  FeatureVector features{};
  double objective = 0.0;  // the task's score; j for the plain objective
  double d = 0.0;          // discriminator score
  double fitness = 0.0;    // objective + beta * d
  int age = 0;
};

// Task score of an evaluated individual (graph, canonical and props set).
using Objective = std::function<double(const Individual &)>;

// Returns props.j.
double plain_objective(const Individual &ind);

// objective + beta * d
constexpr double fitness(double objective, double d, double beta) noexcept {
  return objective + beta * d;
}

enum class ParentSelection { kUniformSurvivors, kTopFraction };

struct EvolverOptions {
  int population_size = 500;
  int elite_count = 1;
  double kill_steepness = 10.0;
  double kill_midpoint = 0.5;
  ParentSelection parent_selection = ParentSelection::kUniformSurvivors;
  double top_fraction = 0.5;
  int max_genotype_len = 100;
  int max_canonical_len = 81;
  double phenyl_probability = 0.04;
  int mutation_attempts = 10;
  int archive_size = 50;
  int threads = 1;
};

// Replacement probability per individual, in input order. Individuals are
// ranked by fitness descending (ties: lower age, then lower index); the
// normalized rank r in [0, 1] (best = 0) maps to 1 / (1 + exp(-s (r - c))).
// A single individual is never replaced. `ages` may be empty (all zero).
std::vector<double> kill_probabilities(std::span<const double> fitnesses,
                                       std::span<const int> ages = {},
                                       double steepness = 10.0, double midpoint = 0.5);

// Indices sorted best first under the same ordering.
std::vector<int> fitness_ranking(std::span<const double> fitnesses,
                                 std::span<const int> ages = {});

enum class MutationKind { kInsertion, kReplacement, kPhenyl };

std::string_view mutation_kind_name(MutationKind k) noexcept;

// The fixed phenyl fragment spliced by the phenyl mutation.
std::span<const Symbol> phenyl_fragment() noexcept;

struct MutationOptions {
  int max_genotype_len = 100;
  int max_canonical_len = 81;
  double phenyl_probability = 0.04;
  int attempts = 10;
};

struct MutationResult {
  Genotype genotype;
  MolecularGraph graph;
  std::string canonical;
  std::optional<MutationKind> kind;  // empty when every attempt was rejected
  int attempts = 0;
};

MutationKind draw_mutation_kind(Rng &rng, double phenyl_probability);

// One point mutation with retries. Returns the parent (decoded) when every
// attempt exceeds the genotype or canonical length cap.
MutationResult mutate(const Genotype &parent, Rng &rng, const MutationOptions &opts = {});

// Top-k distinct canonical forms by objective.
class Archive {
 public:
  struct Entry {
    std::string genotype;
    std::string canonical;
    PropertyRecord props;
    double objective = 0.0;
    int generation = 0;  // first seen
  };

  explicit Archive(int capacity = 50) : capacity_(capacity) {}

  void offer(const Individual &ind, int generation);
  const std::vector<Entry> &entries() const noexcept { return entries_; }
  std::optional<double> best_objective() const;
  int capacity() const noexcept { return capacity_; }

 private:
  int capacity_;
  std::vector<Entry> entries_;  // best first
};

struct GenerationLog {
  int generation = 0;
  double max_j = 0.0;
  double mean_j = 0.0;
  double max_f = 0.0;
  double mean_d = 0.0;
  double beta = 0.0;
  int n_replaced = 0;
  std::string best_canonical;
  double best_objective = 0.0;  // best-ever archive objective
};

void write_log_header(std::ostream &out);
void write_log_row(std::ostream &out, const GenerationLog &log);

// Discriminator plus the pre-featurized reference samples it contrasts with.
struct DiscriminatorSetup {
  Discriminator model;
  std::vector<FeatureVector> reference_features;
  std::uint64_t seed = 0;  // stream for reference sampling and shuffling
  TrainOptions train;
};

// Single-population generational loop. Consumes the main RNG stream in a
// fixed order each step: kill draws, parent draws, then one child seed per
// replaced slot. Children are mutated and evaluated in parallel from their
// own seeds, so results do not depend on the thread count. The
// discriminator uses a separate stream.
class Evolver {
 public:
  Evolver(EvolverOptions opts, NormStats stats, Objective objective, std::uint64_t seed);

  void attach_discriminator(DiscriminatorSetup setup);
  bool has_discriminator() const noexcept { return disc_.has_value(); }
  const Discriminator *discriminator() const;

  // Fills the population by cycling through `seeds`; defaults to methane.
  void initialize(std::span<const Genotype> seeds = {});

  // Advances one generation using `beta` for selection.
  GenerationLog step(double beta);

  // Summary of the current population under `beta`.
  GenerationLog summarize(double beta, int n_replaced) const;

  Individual evaluate(Genotype genotype) const;
  Individual evaluate(Genotype genotype, MolecularGraph graph, std::string canonical) const;

  const std::vector<Individual> &population() const noexcept { return pop_; }
  const Archive &archive() const noexcept { return archive_; }
  int generation() const noexcept { return generation_; }
  const EvolverOptions &options() const noexcept { return opts_; }

 private:
  void refresh_scores();
  void apply_fitness(double beta);

  EvolverOptions opts_;
  NormStats stats_;
  Objective objective_;
  Rng rng_;
  std::optional<DiscriminatorSetup> disc_;
  std::optional<Rng> disc_rng_;
  std::vector<Individual> pop_;
  Archive archive_;
  int generation_ = 0;
};

}  // namespace gadmol

#endif  // GADMOL_EVOLVER_HPP_
