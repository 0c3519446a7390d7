//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion.
//
// Usage: gadmol_acceptance [--only N,M,...] [--expect-fail N,M,...]
// Exit status is 0 when every criterion outside the expect-fail list
// passes; expected failures are still reported as FAIL.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "gadmol/analysis.hpp"
#include "gadmol/discriminator.hpp"
#include "gadmol/evolver.hpp"
#include "gadmol/grammar.hpp"
#include "gadmol/parallel.hpp"
#include "gadmol/reference.hpp"
#include "gadmol/smiles.hpp"
#include "gadmol/tasks.hpp"
#include "oracles.hpp"

namespace {

using namespace gadmol;
namespace fs = std::filesystem;
using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

int hardware_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

const ReferenceSet &bundled() {
  static const ReferenceSet ref = load_reference(GADMOL_DEFAULT_REFERENCE);
  return ref;
}

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string fmt(const char *f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

RunConfig desk(int population, int generations) {
  RunConfig cfg;
  cfg.evolver.population_size = population;
  cfg.generations = generations;
  cfg.threads = hardware_threads();
  return cfg;
}

// 1. Every random string decodes to a valence-valid graph.
Verdict decoder_totality() {
  const auto start = Clock::now();
  Rng rng(1);
  int failures = 0;
  for (int i = 0; i < 100000; ++i) {
    const MolecularGraph g = decode(random_genotype(rng, 50));
    if (!oracle::valence_problem(g).empty()) ++failures;
  }
  const double t = seconds_since(start);
  return {failures == 0 && t < 60.0,
          std::to_string(failures) + " failures in 1e5 strings, " + fmt("%.1f s", t)};
}

// 2. Encode/decode and canonical text round trips.
Verdict round_trip() {
  Rng rng(2);
  int bad_codec = 0, bad_text = 0;
  for (int i = 0; i < 10000; ++i) {
    const MolecularGraph g = decode(random_genotype(rng, 50));
    if (!oracle::isomorphic(decode(encode(g)), g)) ++bad_codec;
    if (!oracle::isomorphic(parse_smiles(canonical(g)), g)) ++bad_text;
  }
  return {bad_codec == 0 && bad_text == 0,
          std::to_string(bad_codec) + " codec and " + std::to_string(bad_text) +
              " text mismatches in 1e4 graphs"};
}

// 3. Backpropagation against central differences.
Verdict gradient_check() {
  Discriminator d(3);
  Rng rng(4);
  for (double &p : d.parameters()) p += 0.05 * rng.normal();
  std::vector<FeatureVector> x(64);
  std::vector<double> y(64);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (double &v : x[i]) v = rng.normal();
    y[i] = static_cast<double>(rng.below(2));
  }
  std::vector<double> grad(Discriminator::parameter_count(), 0.0);
  d.loss_and_gradient(x, y, &grad);
  const std::function<double(const std::vector<double> &)> loss =
      [&](const std::vector<double> &params) {
        Discriminator probe = d;
        probe.parameters() = params;
        return probe.loss_and_gradient(x, y, nullptr);
      };
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const std::size_t i = rng.below(grad.size());
    const double numeric = oracle::central_difference(loss, d.parameters(), i, 1e-5);
    const double scale = std::max({std::abs(numeric), std::abs(grad[i]), 1e-7});
    worst = std::max(worst, std::abs(numeric - grad[i]) / scale);
  }
  return {worst < 1e-4, "max relative error " + fmt("%.2e", worst)};
}

// 4. Fitness arithmetic and the similarity penalty boundary.
Verdict exact_fitness() {
  const bool plain = fitness(2.0, 0.5, 10.0) == 7.0;
  bool penalty = true;
  for (double sim : {0.0, 0.2, 0.4}) penalty &= constrained_fitness(1.5, sim, 0.4) == 1.5 - 1e6;
  penalty &= constrained_fitness(1.5, std::nextafter(0.4, 1.0), 0.4) == 1.5;
  return {plain && penalty, std::string("fitness ") + (plain ? "ok" : "wrong") + ", penalty " +
                                (penalty ? "ok" : "wrong")};
}

// 5. Mutation kind frequencies.
Verdict mutation_mix() {
  Rng rng(5);
  std::array<int, 3> counts{};
  for (int i = 0; i < 10000; ++i) ++counts[static_cast<int>(draw_mutation_kind(rng, 0.04))];
  const double ins = counts[0] / 1e4, rep = counts[1] / 1e4, ph = counts[2] / 1e4;
  const bool ok =
      std::abs(ins - 0.48) <= 0.02 && std::abs(rep - 0.48) <= 0.02 && std::abs(ph - 0.04) <= 0.02;
  return {ok, "insertion " + fmt("%.4f", ins) + ", replacement " + fmt("%.4f", rep) +
                  ", phenyl " + fmt("%.4f", ph)};
}

// 6. GA versus random sampling at equal budget.
Verdict ga_beats_random() {
  const auto start = Clock::now();
  RunConfig cfg = desk(100, 100);
  int wins = 0;
  std::ostringstream detail;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const EvolutionResult ga = run_evolution(cfg, bundled(), plain_objective,
                                             BetaSchedule::constant(0.0), 100, seed);
    const RandomBaselineResult rnd =
        run_random_baseline(10000, bundled().norm, seed, 81, 81, 40, cfg.threads);
    wins += ga.best_history.back() > rnd.max_j;
    if (seed <= 2)
      detail << "seed " << seed << ": GA " << fmt("%.2f", ga.best_history.back()) << " vs "
             << fmt("%.2f", rnd.max_j) << "; ";
  }
  const double t = seconds_since(start);
  detail << wins << "/10 wins, " << fmt("%.1f s", t);
  return {wins >= 9 && t < 600.0, detail.str()};
}

double final_population_tanimoto(const EvolutionResult &r) {
  std::vector<Fingerprint> fps;
  for (const Individual &ind : r.final_population) fps.push_back(fingerprint(ind.graph));
  return mean_pairwise_tanimoto(fps);
}

// 7. The discriminator lowers final-population similarity.
Verdict diversity_effect() {
  RunConfig cfg = desk(500, 100);
  constexpr int kSeeds = 6;
  int lower = 0;
  std::ostringstream detail;
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    auto run = [&](double beta) {
      return final_population_tanimoto(run_evolution(
          cfg, bundled(), plain_objective, BetaSchedule::constant(beta), 100, seed, {}, true));
    };
    const double t0 = run(0.0), t10 = run(10.0);
    lower += t10 < t0;
    detail << fmt("%.3f", t10) << "<" << fmt("%.3f", t0) << (t10 < t0 ? " " : "(no) ");
  }
  const double p = oracle::sign_test_p(kSeeds, lower);
  detail << "; " << lower << "/" << kSeeds << " seeds, sign-test p " << fmt("%.4f", p);
  return {lower == kSeeds && p < 0.05, detail.str()};
}

// 8. Adaptive weight fires and the best-ever score recovers past it.
Verdict adaptive_recovery() {
  RunConfig cfg = desk(250, 300);
  cfg.task = TaskKind::kAdaptiveDt;
  const EvolutionResult r = run_evolution(cfg, bundled(), plain_objective,
                                          cfg.resolved_schedule(), 300, 1, {}, true);
  std::ostringstream detail;
  detail << r.triggers.size() << " triggers, final best-ever "
         << fmt("%.2f", r.best_history.back());
  if (r.triggers.empty()) {
    int longest = 0, run = 0;
    for (std::size_t t = 1; t < r.best_history.size(); ++t) {
      run = r.best_history[t] > r.best_history[t - 1] + cfg.schedule.epsilon ? 0 : run + 1;
      longest = std::max(longest, run);
    }
    detail << ", longest stall " << longest << " generations (window "
           << cfg.schedule.window << ")";
    return {false, detail.str()};
  }
  const int first = r.triggers.front();
  const double at_trigger = r.best_history[first];
  detail << ", best-ever at first trigger (gen " << first << ") " << fmt("%.2f", at_trigger);
  return {r.best_history.back() > at_trigger, detail.str()};
}

// 9. Similarity-constrained improvement of low-scoring reference molecules.
Verdict constrained_success() {
  RunConfig cfg = desk(100, 20);
  cfg.constrained.count = 50;
  cfg.constrained.delta = 0.4;
  cfg.constrained.generations = 20;
  const std::vector<MolecularGraph> starts = constrained_starting_set(cfg, bundled());
  RunConfig inner = cfg;
  inner.threads = 1;
  std::vector<ConstrainedResult> results(starts.size());
  parallel_for(starts.size(), cfg.threads, [&](std::size_t i) {
    results[i] = run_constrained(inner, bundled(), starts[i], Rng::derive(cfg.seed, i));
  });
  int successes = 0, violations = 0;
  double improvement = 0.0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const ConstrainedResult &r = results[i];
    if (!r.success) continue;
    ++successes;
    improvement += r.improvement;
    const double sim = oracle::tanimoto(
        oracle::fingerprint_bits(parse_smiles(r.best)), oracle::fingerprint_bits(starts[i]));
    if (!(sim > cfg.constrained.delta)) ++violations;
  }
  const double rate = static_cast<double>(successes) / static_cast<double>(results.size());
  const double mean = successes > 0 ? improvement / successes : 0.0;
  return {starts.size() == 50 && rate >= 0.95 && mean > 0.0 && violations == 0,
          std::to_string(starts.size()) + " molecules, success " + fmt("%.2f", rate) +
              ", mean improvement " + fmt("%.2f", mean) + ", " + std::to_string(violations) +
              " similarity violations"};
}

// 10. Property targeting.
Verdict property_targets() {
  RunConfig cfg = desk(100, 100);
  const std::vector<PropertyTarget> targets =
      draw_property_targets(TargetMapping::fit(bundled()), 100, cfg.seed);
  RunConfig inner = cfg;
  inner.threads = 1;
  std::vector<char> ok(targets.size(), 0);
  parallel_for(targets.size(), cfg.threads, [&](std::size_t i) {
    ok[i] = run_property_target(inner, bundled(), targets[i], Rng::derive(cfg.seed, i)).success;
  });
  const double rate = std::count(ok.begin(), ok.end(), 1) / static_cast<double>(ok.size());
  return {rate >= 0.8, "success " + fmt("%.2f", rate) + " over 100 targets"};
}

// 11. Discriminator-weight sweep.
Verdict beta_sweep() {
  RunConfig cfg = desk(100, 100);
  cfg.beta_sweep.betas = {0.0, 10.0, 50.0};
  cfg.beta_sweep.seeds = 3;
  const std::vector<BetaSweepRow> rows = run_beta_sweep(cfg, bundled());
  bool monotone = true;
  for (std::size_t i = 1; i < rows.size(); ++i)
    monotone &= rows[i].final_mean_j <= rows[i - 1].final_mean_j;
  const double late_d = rows.back().late_mean_d;
  const bool d_ok = std::abs(late_d - 0.5) <= 0.15;
  std::ostringstream detail;
  detail << "final mean j";
  for (const auto &r : rows) detail << " " << fmt("%.2f", r.final_mean_j);
  detail << (monotone ? " (non-increasing)" : " (NOT monotone)") << "; late mean D at beta 50 "
         << fmt("%.3f", late_d) << (d_ok ? " (within 0.5 +- 0.15)" : " (outside 0.5 +- 0.15)");
  return {monotone && d_ok, detail.str()};
}

// 12. Clustering and projection against independent computations.
Verdict analysis_oracles() {
  const double corners[4][3] = {{0, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
  Rng rng(12);
  std::vector<Point> pts;
  std::vector<int> truth;
  for (int b = 0; b < 4; ++b)
    for (int i = 0; i < 50; ++i) {
      Point p(3);
      for (int d = 0; d < 3; ++d) p[d] = corners[b][d] + 0.1 * rng.normal();
      pts.push_back(p);
      truth.push_back(b);
    }
  const ClusterAssignment c = kmeans(pts, 4, 12);
  std::map<int, int> to_truth;
  bool exact = true;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto [it, fresh] = to_truth.emplace(c.labels[i], truth[i]);
    exact &= it->second == truth[i];
  }
  exact &= to_truth.size() == 4;

  bool monotone = true;
  Rng frng(13);
  std::vector<Point> fps;
  for (int i = 0; i < 300; ++i)
    fps.push_back(to_point(fingerprint(decode(random_genotype(frng, 40)))));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ClusterAssignment f = kmeans(fps, 20, seed);
    for (std::size_t i = 1; i < f.inertia_trace.size(); ++i)
      monotone &= f.inertia_trace[i] <= f.inertia_trace[i - 1] * (1 + 1e-12);
  }

  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const int dim = 4 + 3 * trial;
    std::vector<Point> x(300, Point(dim));
    for (Point &p : x)
      for (int d = 0; d < dim; ++d) p[d] = (1.0 + d % 5) * rng.normal() + (d == 1 ? p[0] : 0.0);
    const Pca2 p = pca2(x, 1e-12, 100000);
    const oracle::Eigen e = oracle::jacobi_eigen(oracle::covariance(x));
    for (int a = 0; a < 2; ++a)
      worst = std::max(worst, std::abs(p.variance[a] - e.values[a]) / e.values[a]);
  }
  return {exact && monotone && worst < 1e-6,
          std::string("blobs ") + (exact ? "recovered" : "NOT recovered") + ", inertia " +
              (monotone ? "monotone" : "NOT monotone") + ", PCA max relative error " +
              fmt("%.2e", worst)};
}

// 13. CLI determinism across thread counts for every runner.
std::string slurp(const fs::path &p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string cli_hash(const std::string &subcommand, const fs::path &config, int threads,
                     const fs::path &out) {
  fs::remove_all(out);
  const std::string cmd = std::string("'") + GADMOL_CLI_PATH + "' " + subcommand + " '" +
                          config.string() + "' --threads " + std::to_string(threads) +
                          " --out '" + out.string() + "' >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return "exit-failure";
  return json::parse(slurp(out / "run_report.json"))["determinism_hash"].get<std::string>();
}

Verdict cli_determinism() {
  const fs::path dir = fs::temp_directory_path() / "gadmol_acceptance_cli";
  fs::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> runners = {
      {"unconstrained", R"({"task": "unconstrained", "generations": 8})"},
      {"adaptive_dt",
       R"({"task": "adaptive_dt", "generations": 12, "schedule": {"window": 2}})"},
      {"constrained_similarity",
       R"({"task": "constrained_similarity", "constrained": {"count": 6, "generations": 5}})"},
      {"property_target",
       R"({"task": "property_target", "generations": 10, "property_target": {"count": 6}})"},
      {"logp_qed", R"({"task": "logp_qed", "generations": 8})"},
      {"random_baseline", R"({"task": "random_baseline", "random_baseline": {"n": 3000}})"},
      {"beta_sweep", R"({"task": "beta_sweep", "generations": 5, "beta_sweep": {"seeds": 2}})"},
  };
  int same = 0;
  std::string mismatched;
  for (const auto &[name, body] : runners) {
    json cfg = json::parse(body);
    cfg["seed"] = 13;
    if (!cfg.contains("evolver")) cfg["evolver"] = {{"population_size", 60}};
    const fs::path path = dir / (name + ".json");
    std::ofstream(path) << cfg.dump();
    const std::string sub = name == "beta_sweep" ? "sweep" : "run";
    const std::string h1 = cli_hash(sub, path, 1, dir / (name + "_t1"));
    const std::string h8 = cli_hash(sub, path, 8, dir / (name + "_t8"));
    const std::string again = cli_hash(sub, path, 1, dir / (name + "_t1b"));
    if (h1 == h8 && h1 == again && h1.size() == 64) {
      ++same;
    } else {
      mismatched += " " + name;
    }
  }
  fs::remove_all(dir);
  return {same == static_cast<int>(runners.size()),
          std::to_string(same) + "/" + std::to_string(runners.size()) +
              " runners hash-identical at 1 and 8 threads" +
              (mismatched.empty() ? "" : "; mismatched:" + mismatched)};
}

// 14. Sulfur chain beats the carbon and bridged-benzene designs.
Verdict design_rules() {
  const std::string s_chain(81, 'S');
  std::string c_chain;
  while (c_chain.size() + 3 <= 81) c_chain += "C=C";
  std::string bridged = "C1=CC=C(C=C1)";
  while (bridged.size() + 14 <= 81) bridged += "SC1=CC=C(C=C1)";
  const double js = penalized_logp(parse_smiles(s_chain), bundled().norm).j;
  const double jc = penalized_logp(parse_smiles(c_chain), bundled().norm).j;
  const double jb = penalized_logp(parse_smiles(bridged), bundled().norm).j;
  return {js > jc && js > jb, "S-chain " + fmt("%.2f", js) + ", C-chain " + fmt("%.2f", jc) +
                                  ", bridged benzene " + fmt("%.2f", jb)};
}

std::set<int> parse_list(const std::string &text) {
  std::set<int> out;
  std::stringstream s(text);
  for (std::string item; std::getline(s, item, ',');)
    if (!item.empty()) out.insert(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char **argv) {
  std::set<int> only, expect_fail;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--only") {
      only = parse_list(argv[i + 1]);
    } else if (flag == "--expect-fail") {
      expect_fail = parse_list(argv[i + 1]);
    } else {
      std::fprintf(stderr, "unknown option %s\n", flag.c_str());
      return 2;
    }
  }

  const std::vector<std::pair<int, std::function<Verdict()>>> criteria = {
      {1, decoder_totality},   {2, round_trip},        {3, gradient_check},
      {4, exact_fitness},      {5, mutation_mix},      {6, ga_beats_random},
      {7, diversity_effect},   {8, adaptive_recovery}, {9, constrained_success},
      {10, property_targets},  {11, beta_sweep},       {12, analysis_oracles},
      {13, cli_determinism},   {14, design_rules},
  };
  int unexpected = 0;
  for (const auto &[id, check] : criteria) {
    if (!only.empty() && !only.count(id)) continue;
    const auto start = Clock::now();
    Verdict v;
    try {
      v = check();
    } catch (const std::exception &e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const bool expected_red = expect_fail.count(id) > 0;
    if (!v.pass && !expected_red) ++unexpected;
    std::printf("criterion %2d: %s  %s [%.1f s]%s\n", id, v.pass ? "PASS" : "FAIL",
                v.detail.c_str(), seconds_since(start),
                !v.pass && expected_red ? " (known failure)" : "");
    std::fflush(stdout);
  }
  return unexpected == 0 ? 0 : 1;
}
