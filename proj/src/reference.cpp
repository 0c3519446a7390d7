//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "gadmol/reference.hpp"

#include <fstream>

#include "gadmol/error.hpp"
#include "gadmol/grammar.hpp"
#include "gadmol/random.hpp"
#include "gadmol/smiles.hpp"

namespace gadmol {
namespace {

void add_molecule(ReferenceSet &set, std::string text, MolecularGraph g) {
  set.descriptors.push_back(describe(g));
  set.features.push_back(featurize(set.descriptors.back()));
  set.smiles.push_back(std::move(text));
  set.graphs.push_back(std::move(g));
}

void finish(ReferenceSet &set, int min_usable) {
  if (static_cast<int>(set.size()) < min_usable) {
    throw EmptyReference(set.source + ": " + std::to_string(set.size()) +
                         " usable molecules, need at least " + std::to_string(min_usable));
  }
  set.norm = fit_norm(std::span<const Descriptors>(set.descriptors));
  set.feature_norm = FeatureNorm::fit(set.features);
}

}  // namespace

ReferenceSet reference_from_lines(std::span<const std::string> lines, std::string source,
                                  int min_usable) {
  ReferenceSet set;
  set.source = std::move(source);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string &line = lines[i];
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos || line[begin] == '#') continue;
    const auto end = line.find_first_of(" \t\r", begin);
    std::string text = line.substr(begin, end == std::string::npos ? end : end - begin);
    ++set.total_lines;
    try {
      MolecularGraph g = parse_smiles(text);
      add_molecule(set, std::move(text), std::move(g));
    } catch (const Error &e) {
      set.failures.push_back({static_cast<int>(i) + 1, text, e.what()});
    }
  }
  finish(set, min_usable);
  return set;
}

ReferenceSet load_reference(const std::string &path, int min_usable) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open reference file: " + path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(std::move(line));
  return reference_from_lines(lines, path, min_usable);
}

ReferenceSet synthetic_reference(int n, std::uint64_t seed, int min_canonical,
                                 int max_canonical) {
  if (n < 1) throw EmptyReference("synthetic reference size must be positive");
  ReferenceSet set;
  set.source = "synthetic:" + std::to_string(n);
  Rng rng(seed);
  const long long budget = 10000LL * n;
  for (long long tries = 0; static_cast<int>(set.size()) < n; ++tries) {
    if (tries >= budget) throw EmptyReference("synthetic reference: length window too narrow");
    MolecularGraph g = decode(random_genotype(rng, max_canonical));
    std::string text = canonical(g);
    const int len = static_cast<int>(text.size());
    if (len < min_canonical || len > max_canonical) continue;
    add_molecule(set, std::move(text), std::move(g));
  }
  set.total_lines = n;
  finish(set, std::min(n, kMinReferenceSize));
  return set;
}

}  // namespace gadmol
