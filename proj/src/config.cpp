//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "gadmol/config.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gadmol/error.hpp"

namespace gadmol {
namespace {

using json = nlohmann::json;

constexpr std::array<std::pair<TaskKind, std::string_view>, 7> kTaskNames = {{
    {TaskKind::kUnconstrained, "unconstrained"},
    {TaskKind::kAdaptiveDt, "adaptive_dt"},
    {TaskKind::kConstrainedSimilarity, "constrained_similarity"},
    {TaskKind::kPropertyTarget, "property_target"},
    {TaskKind::kLogpQed, "logp_qed"},
    {TaskKind::kRandomBaseline, "random_baseline"},
    {TaskKind::kBetaSweep, "beta_sweep"},
}};

// Reads the keys of one JSON object and rejects whatever is left over.
class Section {
 public:
  Section(const json &j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + ": expected an object");
  }

  bool has(const char *key) const { return j_.contains(key); }

  void read(const char *key, int &out) {
    if (const json *v = take(key)) {
      if (!v->is_number_integer()) fail(key, "expected an integer");
      const auto x = v->get<long long>();
      if (x < INT32_MIN || x > INT32_MAX) fail(key, "integer out of range");
      out = static_cast<int>(x);
    }
  }
  void read(const char *key, std::uint64_t &out) {
    if (const json *v = take(key)) {
      if (!v->is_number_unsigned()) fail(key, "expected a non-negative integer");
      out = v->get<std::uint64_t>();
    }
  }
  void read(const char *key, double &out) {
    if (const json *v = take(key)) {
      if (!v->is_number()) fail(key, "expected a number");
      out = v->get<double>();
      if (!std::isfinite(out)) fail(key, "expected a finite number");
    }
  }
  void read(const char *key, bool &out) {
    if (const json *v = take(key)) {
      if (!v->is_boolean()) fail(key, "expected true or false");
      out = v->get<bool>();
    }
  }
  void read(const char *key, std::string &out) {
    if (const json *v = take(key)) {
      if (!v->is_string()) fail(key, "expected a string");
      out = v->get<std::string>();
    }
  }
  void read(const char *key, std::vector<double> &out) {
    if (const json *v = take(key)) {
      if (!v->is_array()) fail(key, "expected an array of numbers");
      out.clear();
      for (const json &x : *v) {
        if (!x.is_number()) fail(key, "expected an array of numbers");
        out.push_back(x.get<double>());
      }
    }
  }
  void read(const char *key, std::vector<std::string> &out) {
    if (const json *v = take(key)) {
      if (!v->is_array()) fail(key, "expected an array of strings");
      out.clear();
      for (const json &x : *v) {
        if (!x.is_string()) fail(key, "expected an array of strings");
        out.push_back(x.get<std::string>());
      }
    }
  }

  // Child object, or nullptr when absent.
  const json *child(const char *key) {
    if (const json *v = take(key)) return v;
    return nullptr;
  }

  std::string where(const char *key = nullptr) const {
    std::string p = path_;
    if (key) p += (p.empty() ? "" : ".") + std::string(key);
    return p.empty() ? "config" : p;
  }

  void finish() const {
    for (const auto &item : j_.items()) {
      if (!used_.count(item.key()))
        throw ConfigError("unknown key '" + where(item.key().c_str()) + "'");
    }
  }

  [[noreturn]] void fail(const char *key, const std::string &msg) const {
    throw ConfigError(where(key) + ": " + msg);
  }

 private:
  const json *take(const char *key) {
    used_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const json &j_;
  std::string path_;
  std::set<std::string> used_;
};

void require(bool ok, const std::string &key, const std::string &msg) {
  if (!ok) throw ConfigError(key + ": " + msg);
}

std::string_view parent_selection_name(ParentSelection p) {
  return p == ParentSelection::kUniformSurvivors ? "uniform_survivors" : "top_fraction";
}

}  // namespace

std::string_view task_name(TaskKind t) noexcept {
  for (const auto &[kind, name] : kTaskNames)
    if (kind == t) return name;
  return "?";
}

std::optional<TaskKind> task_from_name(std::string_view name) noexcept {
  for (const auto &[kind, n] : kTaskNames)
    if (n == name) return kind;
  return std::nullopt;
}

BetaSchedule RunConfig::resolved_schedule() const {
  const bool adaptive =
      schedule.mode == "adaptive" || (schedule.mode == "auto" && task == TaskKind::kAdaptiveDt);
  if (adaptive) return BetaSchedule::adaptive(schedule.low, schedule.high, schedule.window,
                                              schedule.epsilon);
  return BetaSchedule::constant(schedule.beta);
}

TrainOptions RunConfig::train_options() const {
  TrainOptions t;
  t.epochs = discriminator.epochs;
  t.batch_size = discriminator.batch_size;
  t.learning_rate = discriminator.learning_rate;
  return t;
}

EvolverOptions RunConfig::evolver_options() const {
  EvolverOptions o = evolver;
  o.threads = threads;
  return o;
}

std::string RunConfig::resolved_output_dir() const {
  if (!output_dir.empty()) return output_dir;
  if (const char *env = std::getenv("GADMOL_OUTPUT_DIR"); env && *env) return env;
  return "gadmol-out";
}

std::string RunConfig::resolved_reference_path() const {
#ifdef GADMOL_DEFAULT_REFERENCE
  if (reference.path.empty()) return GADMOL_DEFAULT_REFERENCE;
#endif
  return reference.path;
}

RunConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig cfg;
  Section top(root, "");
  std::string task = std::string(task_name(cfg.task));
  top.read("task", task);
  const auto kind = task_from_name(task);
  if (!kind) top.fail("task", "unknown task '" + task + "'");
  cfg.task = *kind;
  top.read("seed", cfg.seed);
  top.read("threads", cfg.threads);
  top.read("output_dir", cfg.output_dir);
  top.read("generations", cfg.generations);
  top.read("snapshot_every", cfg.snapshot_every);

  if (const json *j = top.child("reference")) {
    Section s(*j, "reference");
    s.read("path", cfg.reference.path);
    s.read("synthetic", cfg.reference.synthetic);
    s.finish();
  }
  if (const json *j = top.child("evolver")) {
    Section s(*j, "evolver");
    EvolverOptions &e = cfg.evolver;
    s.read("population_size", e.population_size);
    s.read("elite_count", e.elite_count);
    s.read("kill_steepness", e.kill_steepness);
    s.read("kill_midpoint", e.kill_midpoint);
    std::string sel(parent_selection_name(e.parent_selection));
    s.read("parent_selection", sel);
    if (sel == "uniform_survivors") {
      e.parent_selection = ParentSelection::kUniformSurvivors;
    } else if (sel == "top_fraction") {
      e.parent_selection = ParentSelection::kTopFraction;
    } else {
      s.fail("parent_selection", "expected 'uniform_survivors' or 'top_fraction'");
    }
    s.read("top_fraction", e.top_fraction);
    s.read("max_genotype_len", e.max_genotype_len);
    s.read("max_canonical_len", e.max_canonical_len);
    s.read("phenyl_probability", e.phenyl_probability);
    s.read("mutation_attempts", e.mutation_attempts);
    s.read("archive_size", e.archive_size);
    s.finish();
  }
  if (const json *j = top.child("schedule")) {
    Section s(*j, "schedule");
    s.read("mode", cfg.schedule.mode);
    s.read("beta", cfg.schedule.beta);
    s.read("low", cfg.schedule.low);
    s.read("high", cfg.schedule.high);
    s.read("window", cfg.schedule.window);
    s.read("epsilon", cfg.schedule.epsilon);
    s.finish();
  }
  if (const json *j = top.child("discriminator")) {
    Section s(*j, "discriminator");
    s.read("enabled", cfg.discriminator.enabled);
    s.read("epochs", cfg.discriminator.epochs);
    s.read("batch_size", cfg.discriminator.batch_size);
    s.read("learning_rate", cfg.discriminator.learning_rate);
    s.finish();
  }
  if (const json *j = top.child("constrained")) {
    Section s(*j, "constrained");
    s.read("molecules", cfg.constrained.molecules);
    s.read("count", cfg.constrained.count);
    s.read("delta", cfg.constrained.delta);
    s.read("generations", cfg.constrained.generations);
    s.finish();
  }
  if (const json *j = top.child("property_target")) {
    Section s(*j, "property_target");
    if (const json *t = s.child("targets")) {
      if (!t->is_array()) s.fail("targets", "expected an array of objects");
      for (std::size_t i = 0; i < t->size(); ++i) {
        Section ts((*t)[i], "property_target.targets[" + std::to_string(i) + "]");
        PropertyTarget target;
        for (const char *key : {"logp", "sa", "ring"})
          if (!ts.has(key)) ts.fail(key, "missing");
        ts.read("logp", target.logp);
        ts.read("sa", target.sa);
        ts.read("ring", target.ring);
        ts.finish();
        cfg.property_target.targets.push_back(target);
      }
    }
    s.read("count", cfg.property_target.count);
    s.read("threshold", cfg.property_target.threshold);
    s.read("early_stop", cfg.property_target.early_stop);
    s.finish();
  }
  if (const json *j = top.child("logp_qed")) {
    Section s(*j, "logp_qed");
    s.read("weight_j", cfg.logp_qed.weight_j);
    s.read("weight_qed", cfg.logp_qed.weight_qed);
    s.finish();
  }
  if (const json *j = top.child("random_baseline")) {
    Section s(*j, "random_baseline");
    s.read("n", cfg.random_baseline.n);
    s.read("max_len", cfg.random_baseline.max_len);
    s.read("bins", cfg.random_baseline.bins);
    s.finish();
  }
  if (const json *j = top.child("beta_sweep")) {
    Section s(*j, "beta_sweep");
    s.read("betas", cfg.beta_sweep.betas);
    s.read("seeds", cfg.beta_sweep.seeds);
    s.finish();
  }
  top.finish();
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate(const RunConfig &cfg) {
  const EvolverOptions &e = cfg.evolver;
  require(cfg.threads >= 1, "threads", "must be >= 1");
  require(cfg.generations >= 0, "generations", "must be >= 0");
  require(cfg.snapshot_every >= 0, "snapshot_every", "must be >= 0");
  require(cfg.reference.synthetic >= 0, "reference.synthetic", "must be >= 0");
  require(e.population_size >= 1, "evolver.population_size", "must be >= 1");
  require(e.elite_count >= 0 && e.elite_count <= e.population_size, "evolver.elite_count",
          "must lie in [0, population_size]");
  require(e.kill_steepness > 0, "evolver.kill_steepness", "must be > 0");
  require(e.kill_midpoint >= 0 && e.kill_midpoint <= 1, "evolver.kill_midpoint",
          "must lie in [0, 1]");
  require(e.top_fraction > 0 && e.top_fraction <= 1, "evolver.top_fraction",
          "must lie in (0, 1]");
  require(e.max_genotype_len >= 1, "evolver.max_genotype_len", "must be >= 1");
  require(e.max_canonical_len >= 1, "evolver.max_canonical_len", "must be >= 1");
  require(e.phenyl_probability >= 0 && e.phenyl_probability < 1,
          "evolver.phenyl_probability", "must lie in [0, 1)");
  require(e.mutation_attempts >= 1, "evolver.mutation_attempts", "must be >= 1");
  require(e.archive_size >= 1, "evolver.archive_size", "must be >= 1");

  const auto &s = cfg.schedule;
  require(s.mode == "auto" || s.mode == "constant" || s.mode == "adaptive", "schedule.mode",
          "expected 'auto', 'constant' or 'adaptive'");
  require(s.beta >= 0, "schedule.beta", "must be >= 0");
  require(s.low >= 0 && s.high >= s.low, "schedule.high", "need 0 <= low <= high");
  require(s.window >= 1, "schedule.window", "must be >= 1");
  require(s.epsilon >= 0, "schedule.epsilon", "must be >= 0");

  const auto &d = cfg.discriminator;
  require(d.epochs >= 1, "discriminator.epochs", "must be >= 1");
  require(d.batch_size >= 1, "discriminator.batch_size", "must be >= 1");
  require(d.learning_rate > 0, "discriminator.learning_rate", "must be > 0");

  require(cfg.constrained.count >= 1, "constrained.count", "must be >= 1");
  require(cfg.constrained.delta > 0 && cfg.constrained.delta < 1, "constrained.delta",
          "must lie in (0, 1)");
  require(cfg.constrained.generations >= 0, "constrained.generations", "must be >= 0");

  require(cfg.property_target.count >= 1, "property_target.count", "must be >= 1");
  require(cfg.property_target.threshold > 0, "property_target.threshold", "must be > 0");

  require(cfg.logp_qed.weight_j >= 0, "logp_qed.weight_j", "must be >= 0");
  require(cfg.logp_qed.weight_qed >= 0, "logp_qed.weight_qed", "must be >= 0");

  require(cfg.random_baseline.n >= 1, "random_baseline.n", "must be >= 1");
  require(cfg.random_baseline.max_len >= 1, "random_baseline.max_len", "must be >= 1");
  require(cfg.random_baseline.bins >= 1, "random_baseline.bins", "must be >= 1");

  require(!cfg.beta_sweep.betas.empty(), "beta_sweep.betas", "must not be empty");
  for (double b : cfg.beta_sweep.betas) require(b >= 0, "beta_sweep.betas", "must be >= 0");
  require(cfg.beta_sweep.seeds >= 1, "beta_sweep.seeds", "must be >= 1");
}

std::string config_to_json(const RunConfig &cfg, bool include_execution) {
  const EvolverOptions &e = cfg.evolver;
  json j;
  j["task"] = task_name(cfg.task);
  j["seed"] = cfg.seed;
  if (include_execution) {
    j["threads"] = cfg.threads;
    j["output_dir"] = cfg.output_dir;
  }
  j["generations"] = cfg.generations;
  j["snapshot_every"] = cfg.snapshot_every;
  j["reference"] = {{"path", cfg.reference.path}, {"synthetic", cfg.reference.synthetic}};
  j["evolver"] = {{"population_size", e.population_size},
                  {"elite_count", e.elite_count},
                  {"kill_steepness", e.kill_steepness},
                  {"kill_midpoint", e.kill_midpoint},
                  {"parent_selection", parent_selection_name(e.parent_selection)},
                  {"top_fraction", e.top_fraction},
                  {"max_genotype_len", e.max_genotype_len},
                  {"max_canonical_len", e.max_canonical_len},
                  {"phenyl_probability", e.phenyl_probability},
                  {"mutation_attempts", e.mutation_attempts},
                  {"archive_size", e.archive_size}};
  const BetaSchedule sched = cfg.resolved_schedule();
  j["schedule"] = {{"mode", schedule_mode_name(sched.mode)},
                   {"beta", cfg.schedule.beta},
                   {"low", cfg.schedule.low},
                   {"high", cfg.schedule.high},
                   {"window", cfg.schedule.window},
                   {"epsilon", cfg.schedule.epsilon}};
  j["discriminator"] = {{"enabled", cfg.discriminator.enabled},
                        {"epochs", cfg.discriminator.epochs},
                        {"batch_size", cfg.discriminator.batch_size},
                        {"learning_rate", cfg.discriminator.learning_rate}};
  j["constrained"] = {{"molecules", cfg.constrained.molecules},
                      {"count", cfg.constrained.count},
                      {"delta", cfg.constrained.delta},
                      {"generations", cfg.constrained.generations}};
  json targets = json::array();
  for (const PropertyTarget &t : cfg.property_target.targets)
    targets.push_back({{"logp", t.logp}, {"sa", t.sa}, {"ring", t.ring}});
  j["property_target"] = {{"targets", targets},
                          {"count", cfg.property_target.count},
                          {"threshold", cfg.property_target.threshold},
                          {"early_stop", cfg.property_target.early_stop}};
  j["logp_qed"] = {{"weight_j", cfg.logp_qed.weight_j},
                   {"weight_qed", cfg.logp_qed.weight_qed}};
  j["random_baseline"] = {{"n", cfg.random_baseline.n},
                          {"max_len", cfg.random_baseline.max_len},
                          {"bins", cfg.random_baseline.bins}};
  j["beta_sweep"] = {{"betas", cfg.beta_sweep.betas}, {"seeds", cfg.beta_sweep.seeds}};
  return j.dump(2);
}

}  // namespace gadmol
