//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef GADMOL_ANALYSIS_HPP_
#define GADMOL_ANALYSIS_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gadmol/fingerprint.hpp"

namespace gadmol {

using Point = std::vector<double>;

struct ClusterAssignment {
  std::vector<Point> centroids;
  std::vector<int> labels;
  double inertia = 0.0;
  std::vector<double> inertia_trace;  // after each Lloyd iteration
  int iterations = 0;

  int populated_clusters() const;
};

// k-means++ seeding, then Lloyd iterations until the labels stop changing
// or `max_iter` is reached. An emptied cluster is re-seeded with the point
// farthest from its assigned centroid. Throws TooFewPoints when
// points.size() < k and DimensionMismatch on ragged input.
// Best of `restarts` independent k-means++ seedings, by final inertia.
ClusterAssignment kmeans(std::span<const Point> points, int k, std::uint64_t seed,
                         int max_iter = 100, int restarts = 10);

struct Pca2 {
  Point mean;
  std::array<Point, 2> axes;
  std::array<double, 2> variance{};        // eigenvalues, decreasing
  std::array<double, 2> explained_ratio{};  // variance / total variance
  std::vector<std::array<double, 2>> projected;
};

// Top two principal axes by power iteration with deflation; the
// covariance matrix is never formed. Each axis is signed so its
// largest-magnitude coordinate is positive. Throws TooFewPoints below 3
// points and DegenerateData when the total variance is zero.
Pca2 pca2(std::span<const Point> points, double tol = 1e-9, int max_iter = 1000);

// Fingerprint bits as 0/1 coordinates.
Point to_point(const Fingerprint &fp);

struct DiversitySummary {
  double mean_tanimoto = 1.0;
  int clusters = 1;  // populated clusters of k-means at k = min(20, n)
  bool sampled = false;
};

// Exact pairwise mean up to `exact_limit` fingerprints, otherwise `samples`
// seeded random pairs of distinct indices.
double mean_pairwise_tanimoto(std::span<const Fingerprint> fps, std::uint64_t seed = 0,
                              std::size_t exact_limit = 1000, std::size_t samples = 100000);
DiversitySummary diversity(std::span<const Fingerprint> fps, std::uint64_t seed = 0,
                           int k = 20);

struct SnapshotMolecule {
  std::string genotype;
  std::string canonical;
  double j = 0.0;
};

struct SnapshotRow {
  int generation = 0;
  int rank = 0;  // 0 = best j in the snapshot
  std::string canonical;
  double j = 0.0;
  int cluster = 0;
  double pc1 = 0.0;
  double pc2 = 0.0;
};

// Clusters the top `top_n` molecules by j of every snapshot on a shared
// k-means and PCA fitted to the union of the selections.
std::vector<SnapshotRow> snapshot_report(
    std::span<const std::pair<int, std::vector<SnapshotMolecule>>> snapshots,
    std::uint64_t seed, int top_n = 50, int k = 20);

// Snapshot files are `snapshots/gen_NNNN.tsv` under a run directory with a
// header line and columns genotype, canonical, j.
std::string snapshot_file_name(int generation);
void write_snapshot(const std::string &path, std::span<const SnapshotMolecule> molecules);
std::vector<SnapshotMolecule> read_snapshot(const std::string &path);
// Generations with a snapshot file, ascending.
std::vector<int> list_snapshots(const std::string &run_dir);

void write_snapshot_csv(const std::string &path, std::span<const SnapshotRow> rows);
// Long format: generation, canonical, variable, value.
void write_snapshot_plot_data(const std::string &path, std::span<const SnapshotRow> rows);

}  // namespace gadmol

#endif  // GADMOL_ANALYSIS_HPP_
