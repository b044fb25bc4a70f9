// Copyright 2026 The ricap-augment Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "ricap/ricap.hpp"

namespace ricap {

/// Small class-conditional image dataset: each class has a dominant color
/// and a stripe texture, plus Gaussian pixel noise. Channels are normalized
/// to zero mean and unit variance using training-split statistics.
struct SyntheticConfig {
  std::size_t num_classes = 10;
  std::size_t train_size = 2000;
  std::size_t test_size = 500;
  std::size_t channels = 3;
  std::size_t height = 16;
  std::size_t width = 16;
  double noise = 7.0;
  std::uint64_t seed = 2024;
};

struct SyntheticQuadrantDataset {
  std::size_t num_classes = 0;
  std::vector<LabeledImage<float>> train;
  std::vector<LabeledImage<float>> test;
};

SyntheticQuadrantDataset make_synthetic_dataset(const SyntheticConfig& config);

/// Linear softmax classifier over flattened pixels.
class LinearModel {
 public:
  LinearModel(std::size_t num_classes, std::size_t num_features);

  std::size_t num_classes() const { return num_classes_; }
  std::size_t num_features() const { return num_features_; }

  std::vector<double> logits(std::span<const float> features) const;
  std::size_t predict(std::span<const float> features) const;

  /// Row-major (num_classes x num_features).
  std::vector<double>& weights() { return weights_; }
  const std::vector<double>& weights() const { return weights_; }
  std::vector<double>& bias() { return bias_; }
  const std::vector<double>& bias() const { return bias_; }

  bool operator==(const LinearModel&) const = default;

 private:
  std::size_t num_classes_;
  std::size_t num_features_;
  std::vector<double> weights_;
  std::vector<double> bias_;
};

/// One training example after augmentation. `occupancy_class` is the class
/// used to score training error: the class of the largest quadrant for
/// mixed images, the plain class otherwise.
struct TrainExample {
  ImageF image;
  std::vector<double> target;
  std::size_t occupancy_class = 0;
};

/// Mean KL loss of `model` over `batch`.
double batch_kl_loss(const LinearModel& model, std::span<const TrainExample> batch);

/// One plain SGD step on the mean KL loss of `batch`.
void sgd_step(LinearModel& model, std::span<const TrainExample> batch, double lr);

enum class AugmentKind : std::uint8_t { None, Ricap, RicapImageOnly, RicapLabelOnly, FourMixup };

struct AugmentConfig {
  AugmentKind kind = AugmentKind::None;
  double beta = 0.3;
  BoundaryMode mode = BoundaryMode::PerBatch;
};

/// Builds training examples for one minibatch under `augment`.
std::vector<TrainExample> augment_minibatch(std::span<const LabeledImage<float>> batch, std::size_t num_classes,
                                            const AugmentConfig& augment, Rng& rng);

struct TrainConfig {
  std::size_t steps = 2000;
  std::size_t batch_size = 32;
  double lr = 0.01;
  std::size_t eval_every = 100;
  std::uint64_t seed = 1;
};

struct TraceRow {
  std::size_t step = 0;
  double train_kl = 0.0;
  double train_err = 0.0;
  /// Present on evaluation steps (every eval_every steps and the last step).
  std::optional<double> test_err;

  bool operator==(const TraceRow&) const = default;
};

struct TrainResult {
  LinearModel model;
  std::vector<TraceRow> trace;
};

/// Fraction of `data` whose argmax prediction equals its class.
double accuracy(const LinearModel& model, std::span<const LabeledImage<float>> data);

/// Minibatch SGD from zero-initialized parameters. Deterministic in
/// (dataset, augment, config).
TrainResult train_toy(const SyntheticQuadrantDataset& dataset, const AugmentConfig& augment,
                      const TrainConfig& config);

/// Mean train_kl over the last `window` rows.
double tail_mean_kl(std::span<const TraceRow> trace, std::size_t window);

/// CSV with header step,train_kl,train_err,test_err; test_err is empty on
/// rows without an evaluation. Values use 17 significant digits.
void write_trace_csv(std::ostream& out, std::span<const TraceRow> trace);

}  // namespace ricap
