//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "gadmol/tasks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "gadmol/analysis.hpp"
#include "gadmol/error.hpp"
#include "gadmol/grammar.hpp"
#include "gadmol/parallel.hpp"
#include "gadmol/report.hpp"
#include "gadmol/smiles.hpp"

namespace gadmol {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

// Stream indices for the per-run helper streams.
constexpr std::uint64_t kDiscInitStream = 0xd15c0001;
constexpr std::uint64_t kDiscTrainStream = 0xd15c0002;
constexpr std::uint64_t kTargetStream = 0x7a6e0001;

json props_json(const PropertyRecord &p) {
  return {{"logp_raw", p.logp_raw}, {"sa_raw", p.sa_raw}, {"ring_raw", p.ring_raw},
          {"qed", p.qed},           {"logp_z", p.logp_z}, {"sa_z", p.sa_z},
          {"ring_z", p.ring_z},     {"j", p.j}};
}

json archive_json(const Archive &archive) {
  json out = json::array();
  for (const Archive::Entry &e : archive.entries()) {
    out.push_back({{"genotype", e.genotype},
                   {"canonical", e.canonical},
                   {"objective", e.objective},
                   {"generation", e.generation},
                   {"properties", props_json(e.props)}});
  }
  return out;
}

json mean_std_json(const MeanStd &m) { return {{"mean", m.mean}, {"stddev", m.stddev}}; }

json reference_json(const ReferenceSet &ref) {
  json failures = json::array();
  for (const ReferenceFailure &f : ref.failures)
    failures.push_back({{"line", f.line}, {"text", f.text}, {"message", f.message}});
  return {{"source", ref.source},
          {"usable", ref.size()},
          {"lines", ref.total_lines},
          {"failures", failures},
          {"normalization",
           {{"logp", mean_std_json(ref.norm.logp)},
            {"sa", mean_std_json(ref.norm.sa)},
            {"ring", mean_std_json(ref.norm.ring)}}}};
}

std::ofstream open_out(const fs::path &path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out.precision(17);
  return out;
}

double mean_of(std::span<const double> v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double percentile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

std::vector<SnapshotMolecule> snapshot_of(const Evolver &ev) {
  std::vector<SnapshotMolecule> out;
  for (const Individual &ind : ev.population())
    out.push_back({ind.genotype.to_string(), ind.canonical, ind.props.j});
  return out;
}

RunConfig single_threaded(const RunConfig &cfg) {
  RunConfig c = cfg;
  c.threads = 1;
  return c;
}

json evolution_json(const EvolutionResult &r) {
  json max_j = json::array(), mean_j = json::array(), mean_d = json::array();
  for (const GenerationLog &l : r.logs) {
    max_j.push_back(l.max_j);
    mean_j.push_back(l.mean_j);
    mean_d.push_back(l.mean_d);
  }
  const GenerationLog &last = r.logs.back();
  return {{"generations_run", last.generation},
          {"max_j_trace", max_j},
          {"mean_j_trace", mean_j},
          {"mean_d_trace", mean_d},
          {"best_ever_trace", r.best_history},
          {"beta_trace", r.beta_trace},
          {"triggers", r.triggers},
          {"best_ever", r.best_history.back()},
          {"final", {{"max_j", last.max_j}, {"mean_j", last.mean_j}, {"mean_d", last.mean_d}}},
          {"archive", archive_json(r.archive)}};
}

// Writes generations.csv and snapshots while the run progresses.
struct EvolutionFiles {
  fs::path dir;
  int snapshot_every = 0;
  int last_generation = 0;
  std::ofstream log;

  EvolutionFiles(fs::path d, int every, int last)
      : dir(std::move(d)), snapshot_every(every), last_generation(last) {
    log = open_out(dir / "generations.csv");
    write_log_header(log);
    if (snapshot_every > 0) fs::create_directories(dir / "snapshots");
  }

  EvolutionHooks hooks() {
    EvolutionHooks h;
    h.on_generation = [this](const Evolver &ev, const GenerationLog &l) {
      write_log_row(log, l);
      if (snapshot_every > 0 &&
          (l.generation % snapshot_every == 0 || l.generation == last_generation)) {
        const auto mols = snapshot_of(ev);
        write_snapshot((dir / "snapshots" / snapshot_file_name(l.generation)).string(), mols);
      }
    };
    return h;
  }
};

}  // namespace

double constrained_fitness(double j, double sim, double delta) {
  return sim > delta ? j : j - kSimilarityPenalty;
}

double target_squared_error(const PropertyRecord &props, const PropertyTarget &target) {
  const double a = props.logp_raw - target.logp;
  const double b = props.sa_raw - target.sa;
  const double c = props.ring_raw - target.ring;
  return a * a + b * b + c * c;
}

double property_target_fitness(const PropertyRecord &props, const PropertyTarget &target) {
  return -target_squared_error(props, target);
}

TargetMapping TargetMapping::fit(const ReferenceSet &ref) {
  if (ref.size() == 0) throw EmptyReference("target mapping needs reference molecules");
  TargetMapping m;
  m.logp_to_lo = m.sa_to_lo = std::numeric_limits<double>::infinity();
  m.logp_to_hi = m.sa_to_hi = -std::numeric_limits<double>::infinity();
  for (const Descriptors &d : ref.descriptors) {
    const double lp = logp_raw(d), sa = sa_raw(d);
    m.logp_to_lo = std::min(m.logp_to_lo, lp);
    m.logp_to_hi = std::max(m.logp_to_hi, lp);
    m.sa_to_lo = std::min(m.sa_to_lo, sa);
    m.sa_to_hi = std::max(m.sa_to_hi, sa);
  }
  return m;
}

PropertyTarget TargetMapping::map(double logp, double sa, double ring) const {
  auto affine = [](double x, double a, double b, double c, double d) {
    return c + (x - a) / (b - a) * (d - c);
  };
  return {affine(logp, logp_from_lo, logp_from_hi, logp_to_lo, logp_to_hi),
          affine(sa, sa_from_lo, sa_from_hi, sa_to_lo, sa_to_hi), ring};
}

std::vector<PropertyTarget> draw_property_targets(const TargetMapping &mapping, int n,
                                                  std::uint64_t seed) {
  Rng rng(seed);
  std::vector<PropertyTarget> out;
  for (int i = 0; i < n; ++i) {
    const double lp = mapping.logp_from_lo +
                      rng.uniform() * (mapping.logp_from_hi - mapping.logp_from_lo);
    const double sa =
        mapping.sa_from_lo + rng.uniform() * (mapping.sa_from_hi - mapping.sa_from_lo);
    const double ring = mapping.ring_lo + rng.uniform() * (mapping.ring_hi - mapping.ring_lo);
    out.push_back(mapping.map(lp, sa, ring));
  }
  return out;
}

DiscriminatorSetup make_discriminator(const RunConfig &cfg, const ReferenceSet &ref,
                                      std::uint64_t seed) {
  return {Discriminator(Rng::derive(seed, kDiscInitStream), ref.feature_norm), ref.features,
          Rng::derive(seed, kDiscTrainStream), cfg.train_options()};
}

EvolutionResult run_evolution(const RunConfig &cfg, const ReferenceSet &ref,
                              Objective objective, const BetaSchedule &schedule,
                              int generations, std::uint64_t seed,
                              std::span<const Genotype> initial, bool with_discriminator,
                              const EvolutionHooks &hooks) {
  Evolver ev(cfg.evolver_options(), ref.norm, std::move(objective), seed);
  if (with_discriminator) ev.attach_discriminator(make_discriminator(cfg, ref, seed));
  ev.initialize(initial);

  EvolutionResult r;
  auto record = [&](const GenerationLog &log) {
    r.logs.push_back(log);
    r.best_history.push_back(log.best_objective);
    if (hooks.on_generation) hooks.on_generation(ev, log);
    return hooks.stop && hooks.stop(ev);
  };

  bool stop = record(ev.summarize(schedule.next_beta(0, {}), 0));
  bool was_high = false;
  for (int t = 1; t <= generations && !stop; ++t) {
    const double beta = schedule.next_beta(t, r.best_history);
    const bool high = schedule.mode == BetaSchedule::Mode::kAdaptive && beta == schedule.high &&
                      schedule.high != schedule.low;
    if (high && !was_high) r.triggers.push_back(t);
    was_high = high;
    r.beta_trace.push_back(beta);
    stop = record(ev.step(beta));
  }
  r.stopped_early = stop && ev.generation() < generations;
  r.archive = ev.archive();
  r.final_population = ev.population();
  if (const Discriminator *d = ev.discriminator()) r.discriminator_json = d->to_json();
  return r;
}

std::vector<MolecularGraph> constrained_starting_set(const RunConfig &cfg,
                                                     const ReferenceSet &ref) {
  std::vector<MolecularGraph> out;
  if (!cfg.constrained.molecules.empty()) {
    for (const std::string &s : cfg.constrained.molecules) out.push_back(parse_smiles(s));
    return out;
  }
  std::vector<std::size_t> order(ref.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> j(ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i)
    j[i] = penalized_logp(ref.descriptors[i], ref.norm).j;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return j[a] < j[b];
  });
  std::vector<std::string> seen;
  for (std::size_t idx : order) {
    if (static_cast<int>(out.size()) >= cfg.constrained.count) break;
    const std::string canon = canonical(ref.graphs[idx]);
    if (std::find(seen.begin(), seen.end(), canon) != seen.end()) continue;
    try {
      encode(ref.graphs[idx]);
    } catch (const UnencodableGraph &) {
      continue;
    }
    seen.push_back(canon);
    out.push_back(ref.graphs[idx]);
  }
  return out;
}

ConstrainedResult run_constrained(const RunConfig &cfg, const ReferenceSet &ref,
                                  const MolecularGraph &molecule, std::uint64_t seed) {
  ConstrainedResult res;
  res.reference = canonical(molecule);
  res.reference_j = penalized_logp(molecule, ref.norm).j;
  std::vector<Genotype> start;
  try {
    start.push_back(encode(molecule));
  } catch (const UnencodableGraph &e) {
    res.error = e.what();
    return res;
  }

  const Fingerprint target_fp = fingerprint(molecule);
  const double delta = cfg.constrained.delta;
  Objective objective = [&target_fp, delta](const Individual &ind) {
    return constrained_fitness(ind.props.j, tanimoto(fingerprint(ind.graph), target_fp), delta);
  };
  const EvolutionResult r = run_evolution(cfg, ref, objective, BetaSchedule::constant(0.0),
                                          cfg.constrained.generations, seed, start, false);

  for (const Archive::Entry &e : r.archive.entries()) {
    const MolecularGraph g = decode(parse_genotype(e.genotype));
    const double sim = tanimoto(fingerprint(g), target_fp);
    if (!(sim > delta)) continue;
    if (!res.qualified || e.props.j > res.best_j) {
      res.qualified = true;
      res.best = e.canonical;
      res.best_genotype = e.genotype;
      res.best_j = e.props.j;
      res.similarity = sim;
    }
  }
  if (res.qualified) {
    res.improvement = res.best_j - res.reference_j;
    res.success = res.improvement > 0.0;
  }
  return res;
}

PropertyTargetResult run_property_target(const RunConfig &cfg, const ReferenceSet &ref,
                                         const PropertyTarget &target, std::uint64_t seed) {
  const double threshold = cfg.property_target.threshold;
  Objective objective = [target](const Individual &ind) {
    return property_target_fitness(ind.props, target);
  };
  EvolutionHooks hooks;
  if (cfg.property_target.early_stop) {
    hooks.stop = [threshold](const Evolver &ev) {
      return -ev.archive().best_objective().value_or(-INFINITY) < threshold;
    };
  }
  const EvolutionResult r = run_evolution(cfg, ref, objective, BetaSchedule::constant(0.0),
                                          cfg.generations, seed, {}, false, hooks);
  PropertyTargetResult res;
  res.target = target;
  const Archive::Entry &best = r.archive.entries().front();
  res.best = best.canonical;
  res.best_props = best.props;
  res.squared_error = target_squared_error(best.props, target);
  res.success = res.squared_error < threshold;
  res.generations_run = r.logs.back().generation;
  return res;
}

RandomBaselineResult run_random_baseline(int n, const NormStats &stats, std::uint64_t seed,
                                         int max_len, int max_canonical_len, int bins,
                                         int threads) {
  if (n < 1) throw std::invalid_argument("random baseline needs n >= 1");
  std::vector<double> js(n);
  std::vector<std::string> texts(n);
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t i) {
    Rng rng(Rng::derive(seed, i));
    for (;;) {
      const MolecularGraph g = decode(random_genotype(rng, max_len));
      std::string text = canonical(g);
      if (static_cast<int>(text.size()) > max_canonical_len) continue;
      js[i] = penalized_logp(g, stats).j;
      texts[i] = std::move(text);
      return;
    }
  });

  RandomBaselineResult res;
  res.n = n;
  const auto best = std::max_element(js.begin(), js.end()) - js.begin();
  res.max_j = js[best];
  res.best = texts[best];
  res.mean_j = mean_of(js);
  double var = 0.0;
  for (double j : js) var += (j - res.mean_j) * (j - res.mean_j);
  res.stddev_j = std::sqrt(var / n);
  res.hist_lo = *std::min_element(js.begin(), js.end());
  res.hist_hi = res.max_j;
  res.histogram.assign(bins, 0);
  const double width = (res.hist_hi - res.hist_lo) / bins;
  for (double j : js) {
    int b = width > 0 ? static_cast<int>((j - res.hist_lo) / width) : 0;
    ++res.histogram[std::clamp(b, 0, bins - 1)];
  }
  return res;
}

std::vector<BetaSweepRow> run_beta_sweep(const RunConfig &cfg, const ReferenceSet &ref) {
  const auto &betas = cfg.beta_sweep.betas;
  const int seeds = cfg.beta_sweep.seeds;
  const RunConfig inner = single_threaded(cfg);
  std::vector<std::optional<EvolutionResult>> runs(betas.size() * seeds);
  parallel_for(runs.size(), cfg.threads, [&](std::size_t k) {
    const double beta = betas[k / seeds];
    const std::uint64_t seed = cfg.seed + k % seeds;
    runs[k] = run_evolution(inner, ref, plain_objective, BetaSchedule::constant(beta),
                            cfg.generations, seed, {}, cfg.discriminator.enabled);
  });

  std::vector<BetaSweepRow> rows;
  for (std::size_t b = 0; b < betas.size(); ++b) {
    BetaSweepRow row;
    row.beta = betas[b];
    const std::size_t len = runs[b * seeds]->logs.size();
    row.mean_j_trace.assign(len, 0.0);
    row.mean_d_trace.assign(len, 0.0);
    row.max_j_trace.assign(len, 0.0);
    double tanimoto_sum = 0.0;
    for (int s = 0; s < seeds; ++s) {
      const EvolutionResult &r = *runs[b * seeds + s];
      for (std::size_t t = 0; t < len; ++t) {
        row.mean_j_trace[t] += r.logs[t].mean_j / seeds;
        row.mean_d_trace[t] += r.logs[t].mean_d / seeds;
        row.max_j_trace[t] += r.logs[t].max_j / seeds;
      }
      std::vector<Fingerprint> fps;
      for (const Individual &ind : r.final_population) {
        row.final_js.push_back(ind.props.j);
        fps.push_back(fingerprint(ind.graph));
      }
      if (fps.size() >= 2) tanimoto_sum += mean_pairwise_tanimoto(fps);
    }
    row.final_mean_j = row.mean_j_trace.back();
    const std::size_t late = std::max<std::size_t>(1, len / 4);
    row.late_mean_d = mean_of(std::span<const double>(row.mean_d_trace).last(late));
    row.final_tanimoto = tanimoto_sum / seeds;
    rows.push_back(std::move(row));
  }
  return rows;
}

ReferenceSet load_reference_for(const RunConfig &cfg) {
  if (cfg.reference.synthetic > 0)
    return synthetic_reference(cfg.reference.synthetic, Rng::derive(cfg.seed, 0x5e7));
  return load_reference(cfg.resolved_reference_path());
}

TaskOutput run_task(const RunConfig &cfg, const ReferenceSet &ref) {
  const auto started = std::chrono::steady_clock::now();
  const fs::path dir = cfg.resolved_output_dir();
  fs::create_directories(dir);

  json report;
  report["format"] = "gadmol-run-report";
  report["version"] = 1;
  report["task"] = task_name(cfg.task);
  report["seed"] = cfg.seed;
  report["config"] = json::parse(config_to_json(cfg, false));
  report["reference"] = reference_json(ref);
  json results;

  switch (cfg.task) {
    case TaskKind::kUnconstrained:
    case TaskKind::kAdaptiveDt:
    case TaskKind::kLogpQed: {
      Objective objective = plain_objective;
      if (cfg.task == TaskKind::kLogpQed) {
        const double wj = cfg.logp_qed.weight_j, wq = cfg.logp_qed.weight_qed;
        objective = [wj, wq](const Individual &ind) {
          return wj * ind.props.j + wq * ind.props.qed;
        };
      }
      EvolutionFiles files(dir, cfg.snapshot_every, cfg.generations);
      const EvolutionResult r =
          run_evolution(cfg, ref, objective, cfg.resolved_schedule(), cfg.generations, cfg.seed,
                        {}, cfg.discriminator.enabled, files.hooks());
      results = evolution_json(r);
      if (!r.discriminator_json.empty()) {
        std::ofstream(dir / "discriminator.json") << r.discriminator_json << '\n';
      }
      if (cfg.task == TaskKind::kLogpQed) {
        std::vector<double> ref_qed, ref_logp;
        for (const Descriptors &d : ref.descriptors) {
          ref_qed.push_back(qed(d));
          ref_logp.push_back(logp_raw(d));
        }
        const double qed_p99 = percentile(ref_qed, 0.99);
        const double logp_median = percentile(ref_logp, 0.5);
        std::ofstream scatter = open_out(dir / "logp_qed_scatter.csv");
        scatter << "source,canonical,logp_raw,qed\n";
        int edge = 0;
        const Archive::Entry *max_qed = nullptr, *max_logp = nullptr;
        for (const Archive::Entry &e : r.archive.entries()) {
          scatter << "archive," << e.canonical << ',' << e.props.logp_raw << ',' << e.props.qed
                  << '\n';
          if (e.props.qed > qed_p99 && e.props.logp_raw > logp_median) ++edge;
          if (!max_qed || e.props.qed > max_qed->props.qed) max_qed = &e;
          if (!max_logp || e.props.logp_raw > max_logp->props.logp_raw) max_logp = &e;
        }
        for (std::size_t i = 0; i < ref.size(); ++i)
          scatter << "reference," << ref.smiles[i] << ',' << ref_logp[i] << ',' << ref_qed[i]
                  << '\n';
        results["logp_qed"] = {{"reference_qed_p99", qed_p99},
                               {"reference_logp_median", logp_median},
                               {"archive_beyond_edge", edge},
                               {"max_qed", max_qed->canonical},
                               {"max_logp", max_logp->canonical},
                               {"tradeoff", max_qed->canonical != max_logp->canonical}};
      }
      break;
    }
    case TaskKind::kConstrainedSimilarity: {
      const std::vector<MolecularGraph> mols = constrained_starting_set(cfg, ref);
      std::vector<ConstrainedResult> rows(mols.size());
      const RunConfig inner = single_threaded(cfg);
      parallel_for(mols.size(), cfg.threads, [&](std::size_t i) {
        rows[i] = run_constrained(inner, ref, mols[i], Rng::derive(cfg.seed, i));
      });
      std::ofstream csv = open_out(dir / "constrained.csv");
      csv << "index,reference,reference_j,best,best_j,similarity,improvement,success,error\n";
      json list = json::array();
      int attempted = 0, successes = 0;
      std::vector<double> improvements;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const ConstrainedResult &c = rows[i];
        csv << i << ',' << c.reference << ',' << c.reference_j << ',' << c.best << ','
            << c.best_j << ',' << c.similarity << ',' << c.improvement << ','
            << (c.success ? 1 : 0) << ',' << c.error << '\n';
        list.push_back({{"reference", c.reference},
                        {"reference_j", c.reference_j},
                        {"qualified", c.qualified},
                        {"best", c.best},
                        {"best_genotype", c.best_genotype},
                        {"best_j", c.best_j},
                        {"similarity", c.similarity},
                        {"improvement", c.improvement},
                        {"success", c.success},
                        {"error", c.error}});
        if (!c.error.empty()) continue;
        ++attempted;
        successes += c.success ? 1 : 0;
        if (c.success) improvements.push_back(c.improvement);
      }
      double sd = 0.0;
      const double mean = mean_of(improvements);
      for (double x : improvements) sd += (x - mean) * (x - mean);
      sd = improvements.empty() ? 0.0 : std::sqrt(sd / improvements.size());
      results = {{"molecules", list},
                 {"attempted", attempted},
                 {"success_rate", attempted ? static_cast<double>(successes) / attempted : 0.0},
                 {"mean_improvement", mean},
                 {"stddev_improvement", sd}};
      break;
    }
    case TaskKind::kPropertyTarget: {
      const TargetMapping mapping = TargetMapping::fit(ref);
      std::vector<PropertyTarget> targets = cfg.property_target.targets;
      if (targets.empty())
        targets = draw_property_targets(mapping, cfg.property_target.count,
                                        Rng::derive(cfg.seed, kTargetStream));
      std::vector<PropertyTargetResult> rows(targets.size());
      const RunConfig inner = single_threaded(cfg);
      parallel_for(targets.size(), cfg.threads, [&](std::size_t i) {
        rows[i] = run_property_target(inner, ref, targets[i], Rng::derive(cfg.seed, i));
      });
      std::ofstream csv = open_out(dir / "targets.csv");
      csv << "index,logp_target,sa_target,ring_target,success,squared_error,best,generations\n";
      json list = json::array();
      int successes = 0;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const PropertyTargetResult &p = rows[i];
        csv << i << ',' << p.target.logp << ',' << p.target.sa << ',' << p.target.ring << ','
            << (p.success ? 1 : 0) << ',' << p.squared_error << ',' << p.best << ','
            << p.generations_run << '\n';
        list.push_back({{"target", {{"logp", p.target.logp}, {"sa", p.target.sa},
                                    {"ring", p.target.ring}}},
                        {"success", p.success},
                        {"squared_error", p.squared_error},
                        {"best", p.best},
                        {"properties", props_json(p.best_props)},
                        {"generations_run", p.generations_run}});
        successes += p.success ? 1 : 0;
      }
      results = {{"mapping",
                  {{"logp_from", {mapping.logp_from_lo, mapping.logp_from_hi}},
                   {"logp_to", {mapping.logp_to_lo, mapping.logp_to_hi}},
                   {"sa_from", {mapping.sa_from_lo, mapping.sa_from_hi}},
                   {"sa_to", {mapping.sa_to_lo, mapping.sa_to_hi}},
                   {"ring", {mapping.ring_lo, mapping.ring_hi}}}},
                 {"targets", list},
                 {"success_rate", rows.empty() ? 0.0
                                               : static_cast<double>(successes) / rows.size()}};
      break;
    }
    case TaskKind::kRandomBaseline: {
      const auto &rb = cfg.random_baseline;
      const RandomBaselineResult r =
          run_random_baseline(rb.n, ref.norm, cfg.seed, rb.max_len,
                              cfg.evolver.max_canonical_len, rb.bins, cfg.threads);
      std::ofstream csv = open_out(dir / "random_histogram.csv");
      csv << "bin_lo,bin_hi,count\n";
      const double width = (r.hist_hi - r.hist_lo) / rb.bins;
      for (int b = 0; b < rb.bins; ++b)
        csv << r.hist_lo + b * width << ',' << r.hist_lo + (b + 1) * width << ','
            << r.histogram[b] << '\n';
      results = {{"n", r.n},
                 {"max_j", r.max_j},
                 {"mean_j", r.mean_j},
                 {"stddev_j", r.stddev_j},
                 {"best", r.best},
                 {"right_tail", r.max_j > r.mean_j + 2 * r.stddev_j},
                 {"histogram", {{"lo", r.hist_lo}, {"hi", r.hist_hi}, {"counts", r.histogram}}}};
      break;
    }
    case TaskKind::kBetaSweep: {
      const std::vector<BetaSweepRow> rows = run_beta_sweep(cfg, ref);
      std::ofstream traces = open_out(dir / "sweep_traces.csv");
      traces << "beta,generation,mean_j,mean_d,max_j\n";
      std::ofstream finals = open_out(dir / "sweep_final.csv");
      finals << "beta,index,j\n";
      json list = json::array();
      for (const BetaSweepRow &row : rows) {
        for (std::size_t t = 0; t < row.mean_j_trace.size(); ++t)
          traces << row.beta << ',' << t << ',' << row.mean_j_trace[t] << ','
                 << row.mean_d_trace[t] << ',' << row.max_j_trace[t] << '\n';
        for (std::size_t i = 0; i < row.final_js.size(); ++i)
          finals << row.beta << ',' << i << ',' << row.final_js[i] << '\n';
        list.push_back({{"beta", row.beta},
                        {"final_mean_j", row.final_mean_j},
                        {"late_mean_d", row.late_mean_d},
                        {"final_mean_tanimoto", row.final_tanimoto},
                        {"mean_j_trace", row.mean_j_trace},
                        {"mean_d_trace", row.mean_d_trace}});
      }
      results = {{"rows", list}};
      break;
    }
  }

  report["results"] = results;
  report["execution"] = {{"threads", cfg.threads}, {"output_dir", dir.string()}};
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  report["timing"] = {{"wall_seconds", wall}};

  TaskOutput out;
  out.hash = determinism_hash(report.dump());
  report["determinism_hash"] = out.hash;
  out.report_json = report.dump(2);
  std::ofstream(dir / "run_report.json") << out.report_json << '\n';
  return out;
}

}  // namespace gadmol
