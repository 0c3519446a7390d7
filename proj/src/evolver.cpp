//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "gadmol/evolver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <stdexcept>

#include "gadmol/error.hpp"
#include "gadmol/parallel.hpp"
#include "gadmol/smiles.hpp"

namespace gadmol {
namespace {

constexpr std::array<Symbol, 8> kPhenyl = {
    Symbol::kC, Symbol::kDoubleC, Symbol::kC,     Symbol::kDoubleC,
    Symbol::kC, Symbol::kDoubleC, Symbol::kRing1, Symbol::kN};

int age_at(std::span<const int> ages, std::size_t i) {
  return ages.empty() ? 0 : ages[i];
}

}  // namespace

double plain_objective(const Individual &ind) { return ind.props.j; }

std::vector<int> fitness_ranking(std::span<const double> fitnesses,
                                 std::span<const int> ages) {
  if (!ages.empty() && ages.size() != fitnesses.size())
    throw std::invalid_argument("ages and fitnesses differ in length");
  std::vector<int> order(fitnesses.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (fitnesses[a] != fitnesses[b]) return fitnesses[a] > fitnesses[b];
    return age_at(ages, a) < age_at(ages, b);
  });
  return order;
}

std::vector<double> kill_probabilities(std::span<const double> fitnesses,
                                       std::span<const int> ages, double steepness,
                                       double midpoint) {
  if (fitnesses.empty()) throw std::invalid_argument("empty population");
  const std::size_t n = fitnesses.size();
  std::vector<double> p(n, 0.0);
  if (n == 1) return p;
  const std::vector<int> order = fitness_ranking(fitnesses, ages);
  for (std::size_t rank = 0; rank < n; ++rank) {
    const double r = static_cast<double>(rank) / static_cast<double>(n - 1);
    p[order[rank]] = 1.0 / (1.0 + std::exp(-steepness * (r - midpoint)));
  }
  return p;
}

std::string_view mutation_kind_name(MutationKind k) noexcept {
  switch (k) {
    case MutationKind::kInsertion: return "insertion";
    case MutationKind::kReplacement: return "replacement";
    case MutationKind::kPhenyl: return "phenyl";
  }
  return "?";
}

std::span<const Symbol> phenyl_fragment() noexcept { return kPhenyl; }

MutationKind draw_mutation_kind(Rng &rng, double phenyl_probability) {
  const double u = rng.uniform();
  if (u < phenyl_probability) return MutationKind::kPhenyl;
  const double rest = (u - phenyl_probability) / (1.0 - phenyl_probability);
  return rest < 0.5 ? MutationKind::kInsertion : MutationKind::kReplacement;
}

MutationResult mutate(const Genotype &parent, Rng &rng, const MutationOptions &opts) {
  const std::span<const Symbol> src = parent.symbols();
  for (int attempt = 1; attempt <= opts.attempts; ++attempt) {
    const MutationKind kind = draw_mutation_kind(rng, opts.phenyl_probability);
    std::vector<Symbol> out(src.begin(), src.end());
    switch (kind) {
      case MutationKind::kInsertion: {
        const auto pos = rng.below(out.size() + 1);
        out.insert(out.begin() + static_cast<long>(pos),
                   symbol_from_index(rng.below_int(kNumSymbols)));
        break;
      }
      case MutationKind::kReplacement: {
        const auto pos = rng.below(out.size());
        out[pos] = symbol_from_index(rng.below_int(kNumSymbols));
        break;
      }
      case MutationKind::kPhenyl: {
        const auto pos = rng.below(out.size() + 1);
        out.insert(out.begin() + static_cast<long>(pos), kPhenyl.begin(), kPhenyl.end());
        break;
      }
    }
    if (static_cast<int>(out.size()) > opts.max_genotype_len) continue;
    Genotype child(std::move(out));
    MolecularGraph graph = decode(child);
    std::string text = canonical(graph);
    if (static_cast<int>(text.size()) > opts.max_canonical_len) continue;
    return {std::move(child), std::move(graph), std::move(text), kind, attempt};
  }
  MolecularGraph graph = decode(parent);
  std::string text = canonical(graph);
  return {parent, std::move(graph), std::move(text), std::nullopt, opts.attempts};
}

void Archive::offer(const Individual &ind, int generation) {
  auto worse = [](const Entry &e, double objective, const std::string &canon) {
    if (e.objective != objective) return e.objective < objective;
    return e.canonical > canon;
  };
  if (static_cast<int>(entries_.size()) >= capacity_ && !entries_.empty() &&
      !worse(entries_.back(), ind.objective, ind.canonical))
    return;
  for (const Entry &e : entries_)
    if (e.canonical == ind.canonical) return;
  Entry entry{ind.genotype.to_string(), ind.canonical, ind.props, ind.objective, generation};
  auto pos = std::find_if(entries_.begin(), entries_.end(), [&](const Entry &e) {
    return worse(e, ind.objective, ind.canonical);
  });
  entries_.insert(pos, std::move(entry));
  if (static_cast<int>(entries_.size()) > capacity_) entries_.pop_back();
}

std::optional<double> Archive::best_objective() const {
  if (entries_.empty()) return std::nullopt;
  return entries_.front().objective;
}

void write_log_header(std::ostream &out) {
  out << "generation,max_j,mean_j,max_f,mean_d,beta,n_replaced,best_canonical\n";
}

void write_log_row(std::ostream &out, const GenerationLog &log) {
  const auto old = out.precision(10);
  out << log.generation << ',' << log.max_j << ',' << log.mean_j << ',' << log.max_f << ','
      << log.mean_d << ',' << log.beta << ',' << log.n_replaced << ','
      << log.best_canonical << '\n';
  out.precision(old);
}

Evolver::Evolver(EvolverOptions opts, NormStats stats, Objective objective,
                 std::uint64_t seed)
    : opts_(opts), stats_(stats), objective_(std::move(objective)), rng_(seed),
      archive_(opts.archive_size) {
  if (opts_.population_size < 1) throw std::invalid_argument("population_size must be >= 1");
  if (opts_.elite_count < 0 || opts_.elite_count > opts_.population_size)
    throw std::invalid_argument("elite_count out of range");
  if (!objective_) objective_ = plain_objective;
}

void Evolver::attach_discriminator(DiscriminatorSetup setup) {
  if (setup.reference_features.empty())
    throw EmptyReference("discriminator needs reference features");
  disc_rng_.emplace(setup.seed);
  disc_ = std::move(setup);
}

const Discriminator *Evolver::discriminator() const {
  return disc_ ? &disc_->model : nullptr;
}

Individual Evolver::evaluate(Genotype genotype) const {
  MolecularGraph graph = decode(genotype);
  std::string text = canonical(graph);
  return evaluate(std::move(genotype), std::move(graph), std::move(text));
}

Individual Evolver::evaluate(Genotype genotype, MolecularGraph graph,
                             std::string canonical_text) const {
  const Descriptors desc = describe(graph);
  Individual ind{std::move(genotype), std::move(graph), std::move(canonical_text),
                 penalized_logp(desc, stats_), featurize(desc)};
  ind.objective = objective_(ind);
  ind.fitness = ind.objective;
  return ind;
}

void Evolver::initialize(std::span<const Genotype> seeds) {
  std::vector<Individual> distinct;
  if (seeds.empty()) {
    distinct.push_back(evaluate(Genotype({Symbol::kC})));
  } else {
    for (const Genotype &g : seeds) distinct.push_back(evaluate(g));
  }
  pop_.clear();
  pop_.reserve(opts_.population_size);
  for (int i = 0; i < opts_.population_size; ++i) pop_.push_back(distinct[i % distinct.size()]);
  generation_ = 0;
  archive_ = Archive(opts_.archive_size);
  refresh_scores();
  apply_fitness(0.0);
  for (const Individual &ind : pop_) archive_.offer(ind, 0);
}

void Evolver::refresh_scores() {
  if (!disc_) return;
  const Discriminator &model = disc_->model;
  parallel_for(pop_.size(), opts_.threads,
               [&](std::size_t i) { pop_[i].d = model.predict(pop_[i].features); });
}

void Evolver::apply_fitness(double beta) {
  for (Individual &ind : pop_) ind.fitness = fitness(ind.objective, ind.d, beta);
}

GenerationLog Evolver::step(double beta) {
  if (pop_.empty()) initialize();
  apply_fitness(beta);
  const std::size_t n = pop_.size();
  std::vector<double> fit(n);
  std::vector<int> ages(n);
  for (std::size_t i = 0; i < n; ++i) {
    fit[i] = pop_[i].fitness;
    ages[i] = pop_[i].age;
  }
  const std::vector<double> p =
      kill_probabilities(fit, ages, opts_.kill_steepness, opts_.kill_midpoint);
  const std::vector<int> ranking = fitness_ranking(fit, ages);

  std::vector<char> killed(n, 0);
  std::vector<char> elite(n, 0);
  for (int e = 0; e < opts_.elite_count && e < static_cast<int>(n); ++e) elite[ranking[e]] = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng_.uniform();
    if (!elite[i] && u < p[i]) killed[i] = 1;
  }

  std::vector<int> survivors;  // best first
  for (int idx : ranking)
    if (!killed[idx]) survivors.push_back(idx);
  if (survivors.empty()) {
    killed[ranking[0]] = 0;
    survivors.push_back(ranking[0]);
  }
  std::size_t pool = survivors.size();
  if (opts_.parent_selection == ParentSelection::kTopFraction) {
    pool = static_cast<std::size_t>(std::ceil(opts_.top_fraction * static_cast<double>(pool)));
    pool = std::clamp<std::size_t>(pool, 1, survivors.size());
  }

  std::vector<int> slots;
  std::vector<int> parents;
  for (std::size_t i = 0; i < n; ++i) {
    if (!killed[i]) continue;
    slots.push_back(static_cast<int>(i));
    parents.push_back(survivors[rng_.below(pool)]);
  }
  std::vector<std::uint64_t> seeds(slots.size());
  for (auto &s : seeds) s = rng_.split();

  const MutationOptions mopts{opts_.max_genotype_len, opts_.max_canonical_len,
                              opts_.phenyl_probability, opts_.mutation_attempts};
  std::vector<std::optional<Individual>> children(slots.size());
  parallel_for(slots.size(), opts_.threads, [&](std::size_t k) {
    Rng child_rng(seeds[k]);
    MutationResult m = mutate(pop_[parents[k]].genotype, child_rng, mopts);
    children[k] = evaluate(std::move(m.genotype), std::move(m.graph), std::move(m.canonical));
  });

  for (Individual &ind : pop_) ++ind.age;
  for (std::size_t k = 0; k < slots.size(); ++k) pop_[slots[k]] = std::move(*children[k]);
  ++generation_;

  if (disc_) {
    std::vector<FeatureVector> ga(n);
    for (std::size_t i = 0; i < n; ++i) ga[i] = pop_[i].features;
    std::vector<FeatureVector> ref(n);
    const auto &pool_ref = disc_->reference_features;
    for (std::size_t i = 0; i < n; ++i) ref[i] = pool_ref[disc_rng_->below(pool_ref.size())];
    disc_->model.train(ga, ref, *disc_rng_, disc_->train);
    refresh_scores();
  }
  apply_fitness(beta);
  for (const int slot : slots) archive_.offer(pop_[slot], generation_);
  return summarize(beta, static_cast<int>(slots.size()));
}

GenerationLog Evolver::summarize(double beta, int n_replaced) const {
  GenerationLog log;
  log.generation = generation_;
  log.beta = beta;
  log.n_replaced = n_replaced;
  if (pop_.empty()) return log;
  log.max_j = pop_[0].props.j;
  log.max_f = pop_[0].fitness;
  std::size_t best = 0;
  for (std::size_t i = 0; i < pop_.size(); ++i) {
    const Individual &ind = pop_[i];
    log.max_j = std::max(log.max_j, ind.props.j);
    log.max_f = std::max(log.max_f, ind.fitness);
    log.mean_j += ind.props.j;
    log.mean_d += ind.d;
    if (ind.objective > pop_[best].objective) best = i;
  }
  log.mean_j /= static_cast<double>(pop_.size());
  log.mean_d /= static_cast<double>(pop_.size());
  log.best_canonical = pop_[best].canonical;
  log.best_objective = archive_.best_objective().value_or(pop_[best].objective);
  return log;
}

}  // namespace gadmol
