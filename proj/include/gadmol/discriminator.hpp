//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef GADMOL_DISCRIMINATOR_HPP_
#define GADMOL_DISCRIMINATOR_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gadmol/molgraph.hpp"
#include "gadmol/properties.hpp"
#include "gadmol/random.hpp"

namespace gadmol {

inline constexpr int kNumFeatures = 16;

using FeatureVector = std::array<double, kNumFeatures>;

// Element fractions (C N O S P F), size, ring counts, branching, chain
// length, heteroatom fraction, logP/SA/QED surrogates, unsaturation.
FeatureVector featurize(const Descriptors &d);
inline FeatureVector featurize(const MolecularGraph &g) {
  return featurize(describe(g));
}

// Per-feature z-score statistics, frozen at startup from the reference set.
struct FeatureNorm {
  std::array<double, kNumFeatures> mean{};
  std::array<double, kNumFeatures> stddev{};

  static FeatureNorm identity();
  static FeatureNorm fit(std::span<const FeatureVector> reference);

  // z-scores clipped to +-kClip.
  FeatureVector apply(const FeatureVector &raw) const;

  static constexpr double kClip = 10.0;
};

struct TrainOptions {
  int epochs = 10;
  int batch_size = 32;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Fully connected 16 -> 32 -> 16 -> 1 classifier, ReLU hidden layers and a
// sigmoid output. Label 1 = reference-like, 0 = produced by the GA.
class Discriminator {
 public:
  static constexpr std::array<int, 4> kLayerSizes = {kNumFeatures, 32, 16, 1};

  // Glorot-uniform weights from `seed`, zero biases.
  Discriminator(std::uint64_t seed, FeatureNorm norm);
  explicit Discriminator(std::uint64_t seed)
      : Discriminator(seed, FeatureNorm::identity()) {}

  // Score of a raw (unnormalized) feature vector. Throws DimensionMismatch
  // when features.size() != kNumFeatures.
  double predict(std::span<const double> features) const;
  double predict(const FeatureVector &features) const {
    return predict(std::span<const double>(features));
  }

  // Mean binary cross-entropy by mini-batch Adam. Returns per-epoch mean
  // loss. On a non-finite loss or parameter, restores the previous state
  // and throws NonFiniteLoss.
  std::vector<double> train(std::span<const FeatureVector> ga_samples,
                            std::span<const FeatureVector> ref_samples,
                            Rng &rng, const TrainOptions &opts = {});

  // Mean loss over (normalized inputs, labels); accumulates d(loss)/d(param)
  // into grad when non-null. Used by training and the gradient check.
  double loss_and_gradient(std::span<const FeatureVector> normalized_inputs,
                           std::span<const double> labels,
                           std::vector<double> *grad) const;

  std::vector<double> &parameters() noexcept { return params_; }
  const std::vector<double> &parameters() const noexcept { return params_; }
  const FeatureNorm &norm() const noexcept { return norm_; }
  long long steps() const noexcept { return steps_; }

  static int parameter_count();

  // JSON checkpoint (format "gadmol-discriminator", version 1).
  std::string to_json() const;
  static Discriminator from_json(const std::string &text);
  void save(const std::string &path) const;
  static Discriminator load(const std::string &path);

 private:
  Discriminator() = default;
  double forward_logit(const FeatureVector &x) const;

  FeatureNorm norm_;
  std::vector<double> params_;
  std::vector<double> m_;
  std::vector<double> v_;
  long long steps_ = 0;
};

}  // namespace gadmol

#endif  // GADMOL_DISCRIMINATOR_HPP_
