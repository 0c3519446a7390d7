//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

// Command-line front end: runs tasks, converts between notations and
// analyses population snapshots.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gadmol/analysis.hpp"
#include "gadmol/config.hpp"
#include "gadmol/error.hpp"
#include "gadmol/grammar.hpp"
#include "gadmol/properties.hpp"
#include "gadmol/reference.hpp"
#include "gadmol/smiles.hpp"
#include "gadmol/tasks.hpp"

namespace {

using namespace gadmol;
namespace fs = std::filesystem;

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct CommonOptions {
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::string reference;
  std::optional<int> synthetic;
  std::string out;

  void add_to(CLI::App *app) {
    app->add_option("--seed", seed, "Master seed (overrides the config)");
    app->add_option("--threads", threads, "Maximum worker threads")->check(CLI::PositiveNumber);
    app->add_option("--reference", reference, "Reference SMILES file");
    app->add_option("--synthetic-reference", synthetic,
                    "Use N random molecules instead of a reference file")
        ->check(CLI::Range(kMinReferenceSize, 10000000));
    app->add_option("--out", out, "Output directory");
  }

  void apply(RunConfig &cfg) const {
    if (seed) cfg.seed = *seed;
    if (threads) cfg.threads = *threads;
    if (!reference.empty()) cfg.reference.path = reference;
    if (synthetic) cfg.reference.synthetic = *synthetic;
    if (!out.empty()) cfg.output_dir = out;
    validate(cfg);
  }
};

int execute(const RunConfig &cfg) {
  const ReferenceSet ref = load_reference_for(cfg);
  if (!ref.failures.empty()) {
    std::cerr << "reference: skipped " << ref.failures.size() << " of " << ref.total_lines
              << " lines from " << ref.source << '\n';
  }
  const TaskOutput out = run_task(cfg, ref);
  std::cout << "report: " << (fs::path(cfg.resolved_output_dir()) / "run_report.json").string()
            << '\n'
            << "determinism_hash: " << out.hash << '\n';
  return 0;
}

// Genotypes start with '['; anything else is read as SMILES.
MolecularGraph read_molecule(const std::string &text) {
  if (!text.empty() && text.front() == '[') return decode(parse_genotype(text));
  return parse_smiles(text);
}

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

int props_command(const std::string &reference, std::optional<int> synthetic,
                  std::uint64_t seed) {
  RunConfig cfg;
  cfg.seed = seed;
  cfg.reference.path = reference;
  if (synthetic) cfg.reference.synthetic = *synthetic;
  const ReferenceSet ref = load_reference_for(cfg);

  std::cout.precision(10);
  std::cout << "input,logp_raw,sa_raw,ring_raw,qed,j\n";
  int failures = 0;
  std::string line;
  while (std::getline(std::cin, line)) {
    const std::string text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    try {
      const Descriptors d = describe(read_molecule(text));
      const PropertyRecord p = penalized_logp(d, ref.norm);
      std::cout << text << ',' << p.logp_raw << ',' << p.sa_raw << ',' << p.ring_raw << ','
                << p.qed << ',' << p.j << '\n';
    } catch (const Error &e) {
      std::cerr << "skipped '" << text << "': " << e.what() << '\n';
      ++failures;
    }
  }
  return failures == 0 ? 0 : kExitValidation;
}

int analyze_command(const std::string &run_dir, std::vector<int> generations, bool plot_data,
                    std::uint64_t seed, int top_n, int k) {
  const std::vector<int> available = list_snapshots(run_dir);
  if (available.empty()) throw ConfigError("no snapshots under " + run_dir);
  if (generations.empty()) generations = available;
  std::vector<std::pair<int, std::vector<SnapshotMolecule>>> snapshots;
  for (int g : generations) {
    if (!std::binary_search(available.begin(), available.end(), g))
      throw ConfigError("no snapshot for generation " + std::to_string(g));
    const fs::path path = fs::path(run_dir) / "snapshots" / snapshot_file_name(g);
    snapshots.emplace_back(g, read_snapshot(path.string()));
  }
  const std::vector<SnapshotRow> rows = snapshot_report(snapshots, seed, top_n, k);
  const fs::path csv = fs::path(run_dir) / "analysis.csv";
  write_snapshot_csv(csv.string(), rows);
  std::cout << "analysis: " << csv.string() << '\n';
  if (plot_data) {
    const fs::path tsv = fs::path(run_dir) / "analysis_plot.tsv";
    write_snapshot_plot_data(tsv.string(), rows);
    std::cout << "plot data: " << tsv.string() << '\n';
  }
  return 0;
}

int dispatch(int argc, char **argv) {
  CLI::App app{"gadmol: genetic-algorithm molecule design"};
  app.require_subcommand(1);

  CommonOptions run_opts, sweep_opts, base_opts;
  std::string run_config, sweep_config;
  auto *run = app.add_subcommand("run", "Run the task described by a config file");
  run->add_option("config", run_config, "Config JSON")->required()->check(CLI::ExistingFile);
  run_opts.add_to(run);

  auto *sweep = app.add_subcommand("sweep", "Run a discriminator-weight sweep");
  sweep->add_option("config", sweep_config, "Config JSON")->required()->check(CLI::ExistingFile);
  sweep_opts.add_to(sweep);

  int baseline_n = 50000;
  auto *baseline = app.add_subcommand("baseline", "Score random genotypes");
  baseline->add_option("-n", baseline_n, "Number of samples")->check(CLI::PositiveNumber);
  base_opts.add_to(baseline);

  std::string genotype_text, smiles_text;
  auto *dec = app.add_subcommand("decode", "Print the canonical SMILES of a genotype");
  dec->add_option("genotype", genotype_text)->required();
  auto *enc = app.add_subcommand("encode", "Print a genotype for a SMILES string");
  enc->add_option("smiles", smiles_text)->required();

  std::string props_reference;
  std::optional<int> props_synthetic;
  std::uint64_t props_seed = 1;
  auto *props = app.add_subcommand("props", "Score molecules read from standard input");
  props->add_option("--reference", props_reference, "Reference SMILES file");
  props->add_option("--synthetic-reference", props_synthetic)
      ->check(CLI::Range(kMinReferenceSize, 10000000));
  props->add_option("--seed", props_seed, "Seed for the synthetic reference");

  std::string run_dir;
  std::vector<int> generations;
  bool plot_data = false;
  std::uint64_t analyze_seed = 1;
  int top_n = 50, clusters = 20;
  auto *analyze = app.add_subcommand("analyze", "Cluster and project population snapshots");
  analyze->add_option("run-dir", run_dir)->required()->check(CLI::ExistingDirectory);
  analyze->add_option("--generations", generations, "Snapshot generations to include")
      ->delimiter(',');
  analyze->add_flag("--plot-data", plot_data, "Also write a long-format plot table");
  analyze->add_option("--seed", analyze_seed, "Clustering seed");
  analyze->add_option("--top", top_n, "Molecules per snapshot")->check(CLI::PositiveNumber);
  analyze->add_option("--clusters", clusters, "Cluster count")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  if (*run) {
    RunConfig cfg = load_config(run_config);
    run_opts.apply(cfg);
    return execute(cfg);
  }
  if (*sweep) {
    RunConfig cfg = load_config(sweep_config);
    cfg.task = TaskKind::kBetaSweep;
    sweep_opts.apply(cfg);
    return execute(cfg);
  }
  if (*baseline) {
    RunConfig cfg;
    cfg.task = TaskKind::kRandomBaseline;
    cfg.random_baseline.n = baseline_n;
    base_opts.apply(cfg);
    return execute(cfg);
  }
  if (*dec) {
    std::cout << canonical(decode(parse_genotype(genotype_text))) << '\n';
    return 0;
  }
  if (*enc) {
    std::cout << encode(parse_smiles(smiles_text)).to_string() << '\n';
    return 0;
  }
  if (*props) return props_command(props_reference, props_synthetic, props_seed);
  return analyze_command(run_dir, generations, plot_data, analyze_seed, top_n, clusters);
}

}  // namespace

int main(int argc, char **argv) {
  try {
    return dispatch(argc, argv);
  } catch (const ConfigError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const EmptyReference &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ParseError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const UnencodableGraph &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const KekulizationFailure &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception &e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
