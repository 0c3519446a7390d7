//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "gadmol/config.hpp"
#include "gadmol/error.hpp"
#include "gadmol/reference.hpp"

using namespace gadmol;

TEST_CASE("defaults are materialized", "[config]") {
  const RunConfig cfg = parse_config("{}");
  CHECK(cfg.task == TaskKind::kUnconstrained);
  CHECK(cfg.seed == 1);
  CHECK(cfg.evolver.population_size == 500);
  CHECK(cfg.generations == 100);
  CHECK(cfg.evolver.max_canonical_len == 81);
  CHECK(cfg.schedule.window == 20);
  CHECK(cfg.constrained.delta == 0.4);
  CHECK(cfg.logp_qed.weight_qed == 10.0);
  const std::string text = config_to_json(cfg);
  for (const char *key : {"\"population_size\"", "\"kill_steepness\"", "\"epochs\"",
                          "\"weight_j\"", "\"betas\"", "\"threshold\""})
    CHECK(text.find(key) != std::string::npos);
}

TEST_CASE("config round trip", "[config][property]") {
  const char *input = R"({
    "task": "property_target", "seed": 42, "threads": 3, "generations": 7,
    "evolver": {"population_size": 64, "parent_selection": "top_fraction",
                "top_fraction": 0.25},
    "schedule": {"mode": "adaptive", "window": 5},
    "discriminator": {"enabled": false},
    "property_target": {"targets": [{"logp": 1.5, "sa": 2.0, "ring": 0.0}]},
    "beta_sweep": {"betas": [0, 5.5]}
  })";
  const RunConfig cfg = parse_config(input);
  CHECK(cfg.task == TaskKind::kPropertyTarget);
  CHECK(cfg.evolver.parent_selection == ParentSelection::kTopFraction);
  CHECK(cfg.resolved_schedule().mode == BetaSchedule::Mode::kAdaptive);
  const std::string once = config_to_json(cfg);
  CHECK(config_to_json(parse_config(once)) == once);
  CHECK(config_to_json(cfg, false).find("\"threads\"") == std::string::npos);
}

TEST_CASE("auto schedule follows the task", "[config]") {
  CHECK(parse_config(R"({"task": "adaptive_dt"})").resolved_schedule().mode ==
        BetaSchedule::Mode::kAdaptive);
  CHECK(parse_config(R"({"task": "unconstrained"})").resolved_schedule().mode ==
        BetaSchedule::Mode::kConstant);
}

TEST_CASE("invalid configs are rejected with the key named", "[config]") {
  auto message = [](const char *text) {
    try {
      parse_config(text);
    } catch (const ConfigError &e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message(R"({"populaton": 5})").find("populaton") != std::string::npos);
  CHECK(message(R"({"evolver": {"bogus": 1}})").find("evolver.bogus") != std::string::npos);
  CHECK(message(R"({"seed": -1})").find("seed") != std::string::npos);
  CHECK(message(R"({"generations": "ten"})").find("generations") != std::string::npos);
  CHECK(message(R"({"task": "fly"})").find("task") != std::string::npos);
  CHECK(message(R"({"constrained": {"delta": 1.0}})").find("delta") != std::string::npos);
  CHECK(message(R"({"beta_sweep": {"betas": []}})").find("betas") != std::string::npos);
  CHECK(message(R"({"property_target": {"targets": [{"logp": 1}]}})").find("sa") !=
        std::string::npos);
  CHECK(!message("not json").empty());
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("bundled reference loads almost every line", "[reference]") {
  const ReferenceSet ref = load_reference(GADMOL_DEFAULT_REFERENCE);
  CHECK(ref.total_lines == 1000);
  CHECK(ref.usable_fraction() >= 0.95);
  CHECK(ref.features.size() == ref.size());
  CHECK(ref.norm.logp.stddev > 0.0);
}

TEST_CASE("charged-only reference is empty", "[reference]") {
  std::vector<std::string> lines;
  for (int i = 0; i < 200; ++i) lines.push_back(i % 2 ? "C[NH3+]" : "[O-]C=O");
  CHECK_THROWS_AS(reference_from_lines(lines, "charged"), EmptyReference);

  const auto path = std::filesystem::temp_directory_path() / "gadmol_charged.smi";
  {
    std::ofstream out(path);
    for (const auto &l : lines) out << l << '\n';
  }
  CHECK_THROWS_AS(load_reference(path.string()), EmptyReference);
  std::filesystem::remove(path);
}

TEST_CASE("missing reference file names the path", "[reference]") {
  try {
    load_reference("/nope/ref.smi");
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(std::string(e.what()).find("/nope/ref.smi") != std::string::npos);
  }
}

TEST_CASE("synthetic reference has spread on every property", "[reference]") {
  const ReferenceSet ref = synthetic_reference(500, 3);
  CHECK(ref.size() == 500);
  for (const MeanStd &m : {ref.norm.logp, ref.norm.sa, ref.norm.ring}) {
    CHECK(std::isfinite(m.mean));
    CHECK(std::isfinite(m.stddev));
    CHECK(m.stddev > 0.0);
  }
  for (const auto &s : ref.smiles) {
    CHECK(s.size() >= 10);
    CHECK(s.size() <= 81);
  }
}
