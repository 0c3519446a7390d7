//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "gadmol/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "gadmol/error.hpp"
#include "gadmol/grammar.hpp"
#include "gadmol/random.hpp"

namespace gadmol {
namespace {

double sq_dist(const Point &a, const Point &b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double dot(const Point &a, const Point &b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Point &a) { return std::sqrt(dot(a, a)); }

std::size_t check_points(std::span<const Point> points) {
  const std::size_t dim = points.empty() ? 0 : points[0].size();
  for (const Point &p : points)
    if (p.size() != dim) throw DimensionMismatch("points differ in dimension");
  return dim;
}

// Nonzero coordinates, so distances to dense centroids cost O(nnz).
struct SparsePoint {
  std::vector<std::pair<int, double>> nz;
  double sq_norm = 0.0;
};

std::vector<SparsePoint> sparsify(std::span<const Point> points) {
  std::vector<SparsePoint> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t k = 0; k < points[i].size(); ++k) {
      if (points[i][k] != 0.0) {
        out[i].nz.emplace_back(static_cast<int>(k), points[i][k]);
        out[i].sq_norm += points[i][k] * points[i][k];
      }
    }
  }
  return out;
}

double sparse_sq_dist(const SparsePoint &p, const Point &c, double c_sq_norm) {
  double cross = 0.0;
  for (const auto &[k, v] : p.nz) cross += v * c[k];
  return std::max(0.0, p.sq_norm - 2.0 * cross + c_sq_norm);
}

int nearest(const SparsePoint &p, const std::vector<Point> &centroids,
            const std::vector<double> &c_norms) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    const double d = sparse_sq_dist(p, centroids[c], c_norms[c]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  return best;
}

// Top eigenpair of the covariance of `x` (centered rows), orthogonal to
// `deflate` when given. Returns the Rayleigh quotient.
double power_iteration(const std::vector<Point> &x, const Point *deflate, double deflate_value,
                       Point &v, double tol, int max_iter) {
  const std::size_t n = x.size();
  const std::size_t dim = v.size();
  const double denom = static_cast<double>(n - 1);
  auto apply = [&](const Point &in) {
    Point out(dim, 0.0);
    for (const Point &row : x) {
      const double s = dot(row, in);
      if (s == 0.0) continue;
      for (std::size_t k = 0; k < dim; ++k) out[k] += s * row[k];
    }
    for (double &o : out) o /= denom;
    if (deflate) {
      const double s = deflate_value * dot(*deflate, in);
      for (std::size_t k = 0; k < dim; ++k) out[k] -= s * (*deflate)[k];
    }
    return out;
  };
  auto project_out = [&](Point &p) {
    if (!deflate) return;
    const double s = dot(*deflate, p);
    for (std::size_t k = 0; k < dim; ++k) p[k] -= s * (*deflate)[k];
  };

  project_out(v);
  double len = norm(v);
  for (double &c : v) c /= len;
  for (int it = 0; it < max_iter; ++it) {
    Point w = apply(v);
    project_out(w);
    len = norm(w);
    if (len == 0.0) return 0.0;
    for (double &c : w) c /= len;
    double change = 0.0;
    for (std::size_t k = 0; k < dim; ++k) change = std::max(change, std::abs(w[k] - v[k]));
    v = std::move(w);
    if (change < tol) break;
  }
  return dot(v, apply(v));
}

void fix_sign(Point &axis) {
  std::size_t arg = 0;
  for (std::size_t k = 1; k < axis.size(); ++k)
    if (std::abs(axis[k]) > std::abs(axis[arg])) arg = k;
  if (axis[arg] < 0)
    for (double &c : axis) c = -c;
}

// Unit vector orthogonal to `a`, from the first basis vector that is not
// parallel to it.
Point orthogonal_unit(const Point &a) {
  for (std::size_t e = 0; e < a.size(); ++e) {
    Point v(a.size(), 0.0);
    v[e] = 1.0;
    const double s = a[e];
    for (std::size_t k = 0; k < a.size(); ++k) v[k] -= s * a[k];
    const double len = norm(v);
    if (len > 1e-6) {
      for (double &c : v) c /= len;
      return v;
    }
  }
  return Point(a.size(), 0.0);
}

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

int ClusterAssignment::populated_clusters() const {
  std::vector<char> seen(centroids.size(), 0);
  for (int l : labels) seen[l] = 1;
  return static_cast<int>(std::count(seen.begin(), seen.end(), 1));
}

namespace {

// One k-means++ seeding followed by Lloyd iterations.
ClusterAssignment kmeans_once(std::span<const Point> points,
                              const std::vector<SparsePoint> &sparse, int k, Rng &rng,
                              int max_iter) {
  const std::size_t n = points.size();

  ClusterAssignment out;
  // k-means++ seeding.
  out.centroids.push_back(points[rng.below(n)]);
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = sq_dist(points[i], out.centroids[0]);
  while (out.centroids.size() < static_cast<std::size_t>(k)) {
    double total = 0.0;
    for (double v : d2) total += v;
    std::size_t pick = 0;
    if (total > 0.0) {
      double u = rng.uniform() * total;
      pick = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        if (d2[i] <= 0.0) continue;
        if (u < d2[i]) {
          pick = i;
          break;
        }
        u -= d2[i];
      }
      while (d2[pick] <= 0.0 && pick > 0) --pick;
    } else {
      pick = rng.below(n);
    }
    out.centroids.push_back(points[pick]);
    for (std::size_t i = 0; i < n; ++i)
      d2[i] = std::min(d2[i], sq_dist(points[i], out.centroids.back()));
  }

  out.labels.assign(n, -1);
  std::vector<double> c_norms(k);
  for (int it = 0; it < max_iter; ++it) {
    for (int c = 0; c < k; ++c) c_norms[c] = dot(out.centroids[c], out.centroids[c]);
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const int l = nearest(sparse[i], out.centroids, c_norms);
      if (l != out.labels[i]) {
        out.labels[i] = l;
        changed = true;
      }
    }
    if (!changed) break;
    ++out.iterations;

    std::vector<int> count(k, 0);
    for (int l : out.labels) ++count[l];
    for (int c = 0; c < k; ++c) {
      if (count[c] > 0) continue;
      std::size_t far = n;
      double far_d = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (count[out.labels[i]] < 2) continue;
        const double d = sq_dist(points[i], out.centroids[out.labels[i]]);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      if (far == n) continue;  // every point already sits on its centroid
      --count[out.labels[far]];
      out.labels[far] = c;
      count[c] = 1;
    }

    for (int c = 0; c < k; ++c) {
      if (count[c] == 0) continue;
      std::fill(out.centroids[c].begin(), out.centroids[c].end(), 0.0);
    }
    for (std::size_t i = 0; i < n; ++i) {
      Point &c = out.centroids[out.labels[i]];
      for (const auto &[d, v] : sparse[i].nz) c[d] += v;
    }
    for (int c = 0; c < k; ++c) {
      if (count[c] == 0) continue;
      for (double &v : out.centroids[c]) v /= count[c];
    }

    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) inertia += sq_dist(points[i], out.centroids[out.labels[i]]);
    out.inertia_trace.push_back(inertia);
  }
  out.inertia = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    out.inertia += sq_dist(points[i], out.centroids[out.labels[i]]);
  return out;
}

}  // namespace

ClusterAssignment kmeans(std::span<const Point> points, int k, std::uint64_t seed,
                         int max_iter, int restarts) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (restarts < 1) throw std::invalid_argument("restarts must be positive");
  if (points.size() < static_cast<std::size_t>(k))
    throw TooFewPoints("kmeans needs at least k = " + std::to_string(k) + " points, got " +
                       std::to_string(points.size()));
  check_points(points);
  const std::vector<SparsePoint> sparse = sparsify(points);
  std::optional<ClusterAssignment> best;
  for (int r = 0; r < restarts; ++r) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(r)));
    ClusterAssignment c = kmeans_once(points, sparse, k, rng, max_iter);
    if (!best || c.inertia < best->inertia) best = std::move(c);
  }
  return std::move(*best);
}

Pca2 pca2(std::span<const Point> points, double tol, int max_iter) {
  if (points.size() < 3) throw TooFewPoints("pca2 needs at least 3 points");
  const std::size_t dim = check_points(points);
  if (dim == 0) throw DegenerateData("zero-dimensional points");
  const std::size_t n = points.size();

  Pca2 out;
  out.mean.assign(dim, 0.0);
  for (const Point &p : points)
    for (std::size_t k = 0; k < dim; ++k) out.mean[k] += p[k];
  for (double &m : out.mean) m /= static_cast<double>(n);
  std::vector<Point> x(points.begin(), points.end());
  double total = 0.0;
  for (Point &row : x) {
    for (std::size_t k = 0; k < dim; ++k) {
      row[k] -= out.mean[k];
      total += row[k] * row[k];
    }
  }
  total /= static_cast<double>(n - 1);
  if (total <= 0.0) throw DegenerateData("points have zero variance");

  Rng rng(0x5eed);
  for (int a = 0; a < 2; ++a) {
    Point v(dim);
    for (double &c : v) c = rng.normal();
    const Point *deflate = a == 0 ? nullptr : &out.axes[0];
    double lambda = power_iteration(x, deflate, out.variance[0], v, tol, max_iter);
    if (lambda <= 0.0 || !std::isfinite(norm(v)) || norm(v) == 0.0) {
      lambda = 0.0;
      if (a == 0) throw DegenerateData("no dominant direction");
      v = orthogonal_unit(out.axes[0]);
    }
    fix_sign(v);
    out.axes[a] = std::move(v);
    out.variance[a] = std::max(0.0, lambda);
  }
  for (int a = 0; a < 2; ++a) out.explained_ratio[a] = out.variance[a] / total;

  out.projected.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    out.projected[i] = {dot(x[i], out.axes[0]), dot(x[i], out.axes[1])};
  return out;
}

Point to_point(const Fingerprint &fp) {
  Point p(fp.size(), 0.0);
  for (int b = 0; b < fp.size(); ++b)
    if (fp.test(b)) p[b] = 1.0;
  return p;
}

double mean_pairwise_tanimoto(std::span<const Fingerprint> fps, std::uint64_t seed,
                              std::size_t exact_limit, std::size_t samples) {
  const std::size_t n = fps.size();
  if (n < 2) throw TooFewPoints("diversity needs at least 2 fingerprints");
  double sum = 0.0;
  if (n <= exact_limit) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) sum += tanimoto(fps[i], fps[j]);
    return sum / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
  }
  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t i = rng.below(n);
    std::size_t j = rng.below(n - 1);
    if (j >= i) ++j;
    sum += tanimoto(fps[i], fps[j]);
  }
  return sum / static_cast<double>(samples);
}

DiversitySummary diversity(std::span<const Fingerprint> fps, std::uint64_t seed, int k) {
  DiversitySummary out;
  out.mean_tanimoto = mean_pairwise_tanimoto(fps, seed);
  out.sampled = fps.size() > 1000;
  std::vector<Point> points;
  points.reserve(fps.size());
  for (const Fingerprint &fp : fps) points.push_back(to_point(fp));
  const int kk = std::min<int>(k, static_cast<int>(points.size()));
  out.clusters = kmeans(points, kk, seed).populated_clusters();
  return out;
}

std::vector<SnapshotRow> snapshot_report(
    std::span<const std::pair<int, std::vector<SnapshotMolecule>>> snapshots,
    std::uint64_t seed, int top_n, int k) {
  std::vector<SnapshotRow> rows;
  std::vector<Point> points;
  for (const auto &[generation, molecules] : snapshots) {
    std::vector<const SnapshotMolecule *> sorted;
    for (const SnapshotMolecule &m : molecules) sorted.push_back(&m);
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto *a, const auto *b) {
      if (a->j != b->j) return a->j > b->j;
      return a->canonical < b->canonical;
    });
    std::vector<std::string> seen;
    for (const SnapshotMolecule *m : sorted) {
      if (static_cast<int>(seen.size()) >= top_n) break;
      if (std::find(seen.begin(), seen.end(), m->canonical) != seen.end()) continue;
      seen.push_back(m->canonical);
      SnapshotRow row;
      row.generation = generation;
      row.rank = static_cast<int>(seen.size()) - 1;
      row.canonical = m->canonical;
      row.j = m->j;
      rows.push_back(row);
      points.push_back(to_point(fingerprint(decode(parse_genotype(m->genotype)))));
    }
  }
  if (rows.empty()) return rows;

  const int kk = std::min<int>(k, static_cast<int>(points.size()));
  const ClusterAssignment clusters = kmeans(points, kk, seed);
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].cluster = clusters.labels[i];
  try {
    const Pca2 pca = pca2(points);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      rows[i].pc1 = pca.projected[i][0];
      rows[i].pc2 = pca.projected[i][1];
    }
  } catch (const TooFewPoints &) {
  } catch (const DegenerateData &) {
  }
  return rows;
}

std::string snapshot_file_name(int generation) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "gen_%04d.tsv", generation);
  return buf;
}

void write_snapshot(const std::string &path, std::span<const SnapshotMolecule> molecules) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "genotype\tcanonical\tj\n";
  for (const SnapshotMolecule &m : molecules)
    out << m.genotype << '\t' << m.canonical << '\t' << format_double(m.j) << '\n';
}

std::vector<SnapshotMolecule> read_snapshot(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("missing snapshot " + path);
  std::vector<SnapshotMolecule> out;
  std::string line;
  std::getline(in, line);  // header
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos)
      throw Error(path + ":" + std::to_string(line_no) + ": expected 3 tab-separated columns");
    SnapshotMolecule m;
    m.genotype = line.substr(0, t1);
    m.canonical = line.substr(t1 + 1, t2 - t1 - 1);
    m.j = std::stod(line.substr(t2 + 1));
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<int> list_snapshots(const std::string &run_dir) {
  namespace fs = std::filesystem;
  std::vector<int> gens;
  const fs::path dir = fs::path(run_dir) / "snapshots";
  if (!fs::is_directory(dir)) return gens;
  for (const auto &entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    int g = 0;
    char tail[8] = {};
    if (std::sscanf(name.c_str(), "gen_%d.%4s", &g, tail) == 2 && std::string(tail) == "tsv" &&
        name == snapshot_file_name(g))
      gens.push_back(g);
  }
  std::sort(gens.begin(), gens.end());
  return gens;
}

void write_snapshot_csv(const std::string &path, std::span<const SnapshotRow> rows) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "generation,rank,canonical,j,cluster,pc1,pc2\n";
  for (const SnapshotRow &r : rows) {
    out << r.generation << ',' << r.rank << ',' << r.canonical << ',' << format_double(r.j)
        << ',' << r.cluster << ',' << format_double(r.pc1) << ',' << format_double(r.pc2)
        << '\n';
  }
}

void write_snapshot_plot_data(const std::string &path, std::span<const SnapshotRow> rows) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "generation\tcanonical\tvariable\tvalue\n";
  for (const SnapshotRow &r : rows) {
    const std::pair<const char *, std::string> vars[] = {
        {"j", format_double(r.j)},
        {"cluster", std::to_string(r.cluster)},
        {"pc1", format_double(r.pc1)},
        {"pc2", format_double(r.pc2)}};
    for (const auto &[name, value] : vars)
      out << r.generation << '\t' << r.canonical << '\t' << name << '\t' << value << '\n';
  }
}

}  // namespace gadmol
