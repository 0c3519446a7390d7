//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "gadmol/discriminator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "gadmol/error.hpp"

namespace gadmol {
namespace {

using json = nlohmann::json;

constexpr int kIn = Discriminator::kLayerSizes[0];
constexpr int kH1 = Discriminator::kLayerSizes[1];
constexpr int kH2 = Discriminator::kLayerSizes[2];

// Flat parameter layout: W1[h1][in], b1, W2[h2][h1], b2, W3[1][h2], b3.
constexpr int kW1 = 0;
constexpr int kB1 = kW1 + kH1 * kIn;
constexpr int kW2 = kB1 + kH1;
constexpr int kB2 = kW2 + kH2 * kH1;
constexpr int kW3 = kB2 + kH2;
constexpr int kB3 = kW3 + kH2;
constexpr int kParamCount = kB3 + 1;

struct Activations {
  std::array<double, kH1> a1;  // pre-activation
  std::array<double, kH1> h1;
  std::array<double, kH2> a2;
  std::array<double, kH2> h2;
  double z;
};

void forward(const std::vector<double> &p, const FeatureVector &x, Activations &act) {
  for (int i = 0; i < kH1; ++i) {
    double s = p[kB1 + i];
    const double *w = &p[kW1 + i * kIn];
    for (int k = 0; k < kIn; ++k) s += w[k] * x[k];
    act.a1[i] = s;
    act.h1[i] = s > 0.0 ? s : 0.0;
  }
  for (int i = 0; i < kH2; ++i) {
    double s = p[kB2 + i];
    const double *w = &p[kW2 + i * kH1];
    for (int k = 0; k < kH1; ++k) s += w[k] * act.h1[k];
    act.a2[i] = s;
    act.h2[i] = s > 0.0 ? s : 0.0;
  }
  double z = p[kB3];
  for (int k = 0; k < kH2; ++k) z += p[kW3 + k] * act.h2[k];
  act.z = z;
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// Binary cross-entropy on the logit, stable for large |z|.
double bce_with_logit(double z, double y) {
  return std::max(z, 0.0) - z * y + std::log1p(std::exp(-std::abs(z)));
}

bool all_finite(const std::vector<double> &v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

FeatureVector featurize(const Descriptors &d) {
  FeatureVector f{};
  const double n = std::max(1, d.heavy_atoms);
  for (int e = 0; e < kNumElements; ++e) f[e] = d.element_counts[e] / n;
  f[6] = d.heavy_atoms / 50.0;
  f[7] = d.ring_count() / 10.0;
  f[8] = d.large_ring_count() / 5.0;
  f[9] = d.branch_points / 10.0;
  f[10] = d.max_chain_length / 50.0;
  f[11] = d.heteroatom_fraction();
  f[12] = logp_raw(d) / 10.0;
  f[13] = sa_raw(d) / 10.0;
  f[14] = qed(d);
  f[15] = d.bonds > 0 ? static_cast<double>(d.multiple_bonds) / d.bonds : 0.0;
  return f;
}

FeatureNorm FeatureNorm::identity() {
  FeatureNorm n;
  n.mean.fill(0.0);
  n.stddev.fill(1.0);
  return n;
}

FeatureNorm FeatureNorm::fit(std::span<const FeatureVector> reference) {
  if (reference.empty()) throw EmptyReference("no reference features");
  FeatureNorm n;
  std::vector<double> column(reference.size());
  for (int k = 0; k < kNumFeatures; ++k) {
    for (std::size_t i = 0; i < reference.size(); ++i) column[i] = reference[i][k];
    const MeanStd ms = mean_std(column);
    n.mean[k] = ms.mean;
    n.stddev[k] = ms.stddev;
  }
  return n;
}

FeatureVector FeatureNorm::apply(const FeatureVector &raw) const {
  FeatureVector out;
  for (int k = 0; k < kNumFeatures; ++k)
    out[k] = std::clamp((raw[k] - mean[k]) / stddev[k], -kClip, kClip);
  return out;
}

Discriminator::Discriminator(std::uint64_t seed, FeatureNorm norm)
    : norm_(norm), params_(kParamCount, 0.0), m_(kParamCount, 0.0),
      v_(kParamCount, 0.0) {
  Rng rng(seed);
  auto init = [&](int offset, int fan_in, int fan_out) {
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    for (int i = 0; i < fan_in * fan_out; ++i)
      params_[offset + i] = (2.0 * rng.uniform() - 1.0) * limit;
  };
  init(kW1, kIn, kH1);
  init(kW2, kH1, kH2);
  init(kW3, kH2, 1);
}

int Discriminator::parameter_count() { return kParamCount; }

double Discriminator::forward_logit(const FeatureVector &x) const {
  Activations act;
  forward(params_, x, act);
  return act.z;
}

double Discriminator::predict(std::span<const double> features) const {
  if (features.size() != static_cast<std::size_t>(kNumFeatures)) {
    throw DimensionMismatch("expected " + std::to_string(kNumFeatures) +
                            " features, got " + std::to_string(features.size()));
  }
  FeatureVector raw;
  std::copy(features.begin(), features.end(), raw.begin());
  return sigmoid(forward_logit(norm_.apply(raw)));
}

double Discriminator::loss_and_gradient(std::span<const FeatureVector> inputs,
                                        std::span<const double> labels,
                                        std::vector<double> *grad) const {
  if (inputs.size() != labels.size())
    throw DimensionMismatch("inputs and labels differ in length");
  if (inputs.empty()) return 0.0;
  if (grad) grad->assign(kParamCount, 0.0);
  const double scale = 1.0 / static_cast<double>(inputs.size());
  const std::vector<double> &p = params_;

  double total = 0.0;
  Activations act;
  std::array<double, kH2> d2;
  std::array<double, kH1> d1;
  for (std::size_t s = 0; s < inputs.size(); ++s) {
    const FeatureVector &x = inputs[s];
    forward(p, x, act);
    total += bce_with_logit(act.z, labels[s]);
    if (!grad) continue;

    std::vector<double> &g = *grad;
    const double dz = (sigmoid(act.z) - labels[s]) * scale;
    g[kB3] += dz;
    for (int k = 0; k < kH2; ++k) {
      g[kW3 + k] += dz * act.h2[k];
      d2[k] = act.a2[k] > 0.0 ? dz * p[kW3 + k] : 0.0;
    }
    d1.fill(0.0);
    for (int i = 0; i < kH2; ++i) {
      if (d2[i] == 0.0) continue;
      g[kB2 + i] += d2[i];
      const double *w = &p[kW2 + i * kH1];
      double *gw = &g[kW2 + i * kH1];
      for (int k = 0; k < kH1; ++k) {
        gw[k] += d2[i] * act.h1[k];
        d1[k] += d2[i] * w[k];
      }
    }
    for (int i = 0; i < kH1; ++i) {
      if (act.a1[i] <= 0.0 || d1[i] == 0.0) continue;
      g[kB1 + i] += d1[i];
      double *gw = &g[kW1 + i * kIn];
      for (int k = 0; k < kIn; ++k) gw[k] += d1[i] * x[k];
    }
  }
  return total * scale;
}

std::vector<double> Discriminator::train(std::span<const FeatureVector> ga_samples,
                                         std::span<const FeatureVector> ref_samples,
                                         Rng &rng, const TrainOptions &opts) {
  if (ga_samples.empty() || ref_samples.empty())
    throw std::invalid_argument("discriminator training needs both classes");

  std::vector<FeatureVector> inputs;
  std::vector<double> labels;
  inputs.reserve(ga_samples.size() + ref_samples.size());
  for (const FeatureVector &f : ga_samples) {
    inputs.push_back(norm_.apply(f));
    labels.push_back(0.0);
  }
  for (const FeatureVector &f : ref_samples) {
    inputs.push_back(norm_.apply(f));
    labels.push_back(1.0);
  }

  const std::vector<double> saved_p = params_, saved_m = m_, saved_v = v_;
  const long long saved_steps = steps_;
  auto restore_and_throw = [&](const std::string &what) {
    params_ = saved_p;
    m_ = saved_m;
    v_ = saved_v;
    steps_ = saved_steps;
    throw NonFiniteLoss(what);
  };

  const std::size_t n = inputs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<FeatureVector> bx;
  std::vector<double> by;
  std::vector<double> grad;
  std::vector<double> trace;

  for (int epoch = 0; epoch < opts.epochs; ++epoch) {
    for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < n; start += opts.batch_size) {
      const std::size_t stop = std::min(n, start + static_cast<std::size_t>(opts.batch_size));
      bx.clear();
      by.clear();
      for (std::size_t k = start; k < stop; ++k) {
        bx.push_back(inputs[order[k]]);
        by.push_back(labels[order[k]]);
      }
      const double loss = loss_and_gradient(bx, by, &grad);
      if (!std::isfinite(loss)) restore_and_throw("non-finite training loss");
      epoch_loss += loss * static_cast<double>(stop - start);

      ++steps_;
      const double c1 = 1.0 - std::pow(opts.beta1, static_cast<double>(steps_));
      const double c2 = 1.0 - std::pow(opts.beta2, static_cast<double>(steps_));
      for (int p = 0; p < kParamCount; ++p) {
        m_[p] = opts.beta1 * m_[p] + (1.0 - opts.beta1) * grad[p];
        v_[p] = opts.beta2 * v_[p] + (1.0 - opts.beta2) * grad[p] * grad[p];
        params_[p] -= opts.learning_rate * (m_[p] / c1) /
                      (std::sqrt(v_[p] / c2) + opts.epsilon);
      }
      if (!all_finite(params_)) restore_and_throw("non-finite parameters");
    }
    trace.push_back(epoch_loss / static_cast<double>(n));
  }
  return trace;
}

std::string Discriminator::to_json() const {
  json j;
  j["format"] = "gadmol-discriminator";
  j["version"] = 1;
  j["layer_sizes"] = kLayerSizes;
  j["parameters"] = params_;
  j["adam"] = {{"m", m_}, {"v", v_}, {"steps", steps_}};
  j["feature_norm"] = {{"mean", norm_.mean}, {"stddev", norm_.stddev}};
  return j.dump();
}

Discriminator Discriminator::from_json(const std::string &text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception &e) {
    throw Error(std::string("bad discriminator checkpoint: ") + e.what());
  }
  if (j.value("format", "") != "gadmol-discriminator" || j.value("version", 0) != 1)
    throw Error("unrecognized discriminator checkpoint format");
  try {
    if (j.at("layer_sizes").get<std::vector<int>>() !=
        std::vector<int>(kLayerSizes.begin(), kLayerSizes.end()))
      throw DimensionMismatch("checkpoint layer sizes differ");
    Discriminator d;
    d.params_ = j.at("parameters").get<std::vector<double>>();
    d.m_ = j.at("adam").at("m").get<std::vector<double>>();
    d.v_ = j.at("adam").at("v").get<std::vector<double>>();
    d.steps_ = j.at("adam").at("steps").get<long long>();
    const auto mean = j.at("feature_norm").at("mean").get<std::vector<double>>();
    const auto sd = j.at("feature_norm").at("stddev").get<std::vector<double>>();
    if (d.params_.size() != static_cast<std::size_t>(kParamCount) ||
        d.m_.size() != d.params_.size() || d.v_.size() != d.params_.size() ||
        mean.size() != static_cast<std::size_t>(kNumFeatures) ||
        sd.size() != static_cast<std::size_t>(kNumFeatures))
      throw DimensionMismatch("checkpoint array sizes differ");
    std::copy(mean.begin(), mean.end(), d.norm_.mean.begin());
    std::copy(sd.begin(), sd.end(), d.norm_.stddev.begin());
    return d;
  } catch (const json::exception &e) {
    throw Error(std::string("bad discriminator checkpoint: ") + e.what());
  }
}

void Discriminator::save(const std::string &path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << to_json() << '\n';
}

Discriminator Discriminator::load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

}  // namespace gadmol
