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

#include "ricap/train.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <string>

#include "ricap/errors.hpp"
#include "ricap/loss.hpp"

namespace ricap {
namespace {

ImageF make_image(std::size_t class_id, const SyntheticConfig& cfg, const std::vector<double>& colors,
                  Rng& rng) {
  ImageF img(cfg.channels, cfg.height, cfg.width);
  const double k = static_cast<double>(class_id);
  const double theta = std::numbers::pi * k / static_cast<double>(cfg.num_classes);
  const double freq = 1.0 + static_cast<double>(class_id % 4);
  const double phase = 0.7 * k;
  for (std::size_t c = 0; c < cfg.channels; ++c) {
    for (std::size_t y = 0; y < cfg.height; ++y) {
      for (std::size_t x = 0; x < cfg.width; ++x) {
        const double u = (static_cast<double>(x) * std::cos(theta) + static_cast<double>(y) * std::sin(theta)) /
                         static_cast<double>(cfg.width);
        const double texture = std::sin(2.0 * std::numbers::pi * freq * u + phase);
        const double v = colors[class_id * cfg.channels + c] + texture + cfg.noise * sample_standard_normal(rng);
        img.at(c, y, x) = static_cast<float>(v);
      }
    }
  }
  return img;
}

void normalize_channels(SyntheticQuadrantDataset& ds, std::size_t channels) {
  std::vector<double> sum(channels, 0.0);
  std::vector<double> sq(channels, 0.0);
  std::size_t count = 0;
  for (const auto& s : ds.train) {
    const std::size_t plane = s.image.height() * s.image.width();
    for (std::size_t c = 0; c < channels; ++c) {
      for (std::size_t i = 0; i < plane; ++i) {
        const double v = s.image.pixels()[c * plane + i];
        sum[c] += v;
        sq[c] += v * v;
      }
    }
    count += plane;
  }
  std::vector<double> mean(channels);
  std::vector<double> inv_std(channels);
  for (std::size_t c = 0; c < channels; ++c) {
    mean[c] = sum[c] / static_cast<double>(count);
    const double var = sq[c] / static_cast<double>(count) - mean[c] * mean[c];
    inv_std[c] = var > 0.0 ? 1.0 / std::sqrt(var) : 1.0;
  }
  auto apply = [&](std::vector<LabeledImage<float>>& split) {
    for (auto& s : split) {
      const std::size_t plane = s.image.height() * s.image.width();
      auto px = s.image.pixels();
      for (std::size_t c = 0; c < channels; ++c) {
        for (std::size_t i = 0; i < plane; ++i) {
          px[c * plane + i] = static_cast<float>((px[c * plane + i] - mean[c]) * inv_std[c]);
        }
      }
    }
  };
  apply(ds.train);
  apply(ds.test);
}

}  // namespace

SyntheticQuadrantDataset make_synthetic_dataset(const SyntheticConfig& cfg) {
  if (cfg.num_classes < 2 || cfg.train_size == 0 || cfg.height == 0 || cfg.width == 0) {
    throw ParameterError("synthetic dataset needs >= 2 classes, a non-empty train split and a positive canvas");
  }
  Rng palette(cfg.seed, 0);
  std::vector<double> colors(cfg.num_classes * cfg.channels);
  for (double& c : colors) c = sample_standard_normal(palette);

  SyntheticQuadrantDataset ds;
  ds.num_classes = cfg.num_classes;
  auto fill = [&](std::vector<LabeledImage<float>>& split, std::size_t n, std::uint64_t stream) {
    const Rng split_rng(cfg.seed, stream);
    split.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      Rng rng = split_rng.child(i);
      const std::size_t cls = i % cfg.num_classes;
      split.push_back({make_image(cls, cfg, colors, rng), cls});
    }
  };
  fill(ds.train, cfg.train_size, 1);
  fill(ds.test, cfg.test_size, 2);
  normalize_channels(ds, cfg.channels);
  return ds;
}

LinearModel::LinearModel(std::size_t num_classes, std::size_t num_features)
    : num_classes_(num_classes),
      num_features_(num_features),
      weights_(num_classes * num_features, 0.0),
      bias_(num_classes, 0.0) {}

std::vector<double> LinearModel::logits(std::span<const float> x) const {
  if (x.size() != num_features_) {
    throw InputError("model expects " + std::to_string(num_features_) + " features, got " +
                     std::to_string(x.size()));
  }
  std::vector<double> z(bias_);
  for (std::size_t k = 0; k < num_classes_; ++k) {
    const double* row = &weights_[k * num_features_];
    double acc = 0.0;
    for (std::size_t j = 0; j < num_features_; ++j) acc += row[j] * static_cast<double>(x[j]);
    z[k] += acc;
  }
  return z;
}

std::size_t LinearModel::predict(std::span<const float> x) const {
  const auto z = logits(x);
  return static_cast<std::size_t>(std::max_element(z.begin(), z.end()) - z.begin());
}

double batch_kl_loss(const LinearModel& model, std::span<const TrainExample> batch) {
  double total = 0.0;
  for (const auto& ex : batch) total += kl_loss(model.logits(ex.image.pixels()), ex.target);
  return total / static_cast<double>(batch.size());
}

void sgd_step(LinearModel& model, std::span<const TrainExample> batch, double lr) {
  if (!(lr > 0.0)) throw ParameterError("learning rate must be positive");
  const std::size_t d = model.num_features();
  const std::size_t k_count = model.num_classes();
  std::vector<double> grad_w(k_count * d, 0.0);
  std::vector<double> grad_b(k_count, 0.0);
  for (const auto& ex : batch) {
    const auto x = ex.image.pixels();
    const auto g = grad_soft_ce(model.logits(x), ex.target);
    for (std::size_t k = 0; k < k_count; ++k) {
      grad_b[k] += g[k];
      double* row = &grad_w[k * d];
      for (std::size_t j = 0; j < d; ++j) row[j] += g[k] * static_cast<double>(x[j]);
    }
  }
  const double scale = lr / static_cast<double>(batch.size());
  for (std::size_t i = 0; i < grad_w.size(); ++i) model.weights()[i] -= scale * grad_w[i];
  for (std::size_t k = 0; k < k_count; ++k) model.bias()[k] -= scale * grad_b[k];
}

std::vector<TrainExample> augment_minibatch(std::span<const LabeledImage<float>> batch, std::size_t num_classes,
                                            const AugmentConfig& augment, Rng& rng) {
  std::vector<TrainExample> out;
  out.reserve(batch.size());
  if (augment.kind == AugmentKind::None) {
    for (const auto& s : batch) out.push_back({s.image, one_hot(s.class_id, num_classes).probs, s.class_id});
    return out;
  }
  const Canvas canvas = check_batch(batch, num_classes);
  const auto plans = plan_batch(batch.size(), canvas, BetaParam(augment.beta), rng, augment.mode);
  for (const auto& plan : plans) {
    const auto weights = mix_weights(crop_sizes(plan.boundary, canvas), canvas);
    const std::size_t dominant = batch[plan.specs[dominant_quadrant(weights)].source_index].class_id;
    switch (augment.kind) {
      case AugmentKind::Ricap: {
        auto s = render_ricap(batch, num_classes, plan);
        out.push_back({std::move(s.image), std::move(s.label.probs), dominant});
        break;
      }
      case AugmentKind::RicapImageOnly:
        out.push_back({render_patched(batch, plan), one_hot(dominant, num_classes).probs, dominant});
        break;
      case AugmentKind::RicapLabelOnly: {
        auto s = render_label_only(batch, num_classes, plan);
        out.push_back({std::move(s.image), std::move(s.label.probs), dominant});
        break;
      }
      case AugmentKind::FourMixup: {
        auto s = render_four_mixup(batch, num_classes, plan);
        out.push_back({std::move(s.image), std::move(s.label.probs), dominant});
        break;
      }
      case AugmentKind::None: break;
    }
  }
  return out;
}

double accuracy(const LinearModel& model, std::span<const LabeledImage<float>> data) {
  if (data.empty()) return 0.0;
  std::size_t correct = 0;
  for (const auto& s : data) correct += model.predict(s.image.pixels()) == s.class_id ? 1 : 0;
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

TrainResult train_toy(const SyntheticQuadrantDataset& dataset, const AugmentConfig& augment,
                      const TrainConfig& config) {
  if (config.steps == 0 || config.batch_size == 0 || config.eval_every == 0) {
    throw ParameterError("steps, batch size and evaluation interval must be >= 1");
  }
  if (!(config.lr > 0.0)) throw ParameterError("learning rate must be positive");
  if (dataset.train.empty()) throw ParameterError("training split is empty");

  const auto& first = dataset.train.front().image;
  TrainResult result{LinearModel(dataset.num_classes, first.pixels().size()), {}};
  result.trace.reserve(config.steps);
  const Rng base(config.seed, 0x747261696eULL);
  const auto last = static_cast<std::int64_t>(dataset.train.size() - 1);

  std::vector<LabeledImage<float>> minibatch(config.batch_size);
  for (std::size_t step = 1; step <= config.steps; ++step) {
    Rng step_rng = base.child(step);
    for (auto& slot : minibatch) {
      slot = dataset.train[static_cast<std::size_t>(sample_uniform_int(0, last, step_rng))];
    }
    Rng aug_rng = step_rng.child(1);
    const auto examples = augment_minibatch(minibatch, dataset.num_classes, augment, aug_rng);

    TraceRow row;
    row.step = step;
    std::size_t wrong = 0;
    double kl = 0.0;
    for (const auto& ex : examples) {
      const auto z = result.model.logits(ex.image.pixels());
      kl += kl_loss(z, ex.target);
      const auto pred = static_cast<std::size_t>(std::max_element(z.begin(), z.end()) - z.begin());
      wrong += pred != ex.occupancy_class ? 1 : 0;
    }
    row.train_kl = kl / static_cast<double>(examples.size());
    row.train_err = static_cast<double>(wrong) / static_cast<double>(examples.size());

    sgd_step(result.model, examples, config.lr);

    if (step % config.eval_every == 0 || step == config.steps) {
      row.test_err = 1.0 - accuracy(result.model, dataset.test);
    }
    result.trace.push_back(row);
  }
  return result;
}

double tail_mean_kl(std::span<const TraceRow> trace, std::size_t window) {
  if (trace.empty() || window == 0) return 0.0;
  const std::size_t n = std::min(window, trace.size());
  double sum = 0.0;
  for (std::size_t i = trace.size() - n; i < trace.size(); ++i) sum += trace[i].train_kl;
  return sum / static_cast<double>(n);
}

void write_trace_csv(std::ostream& out, std::span<const TraceRow> trace) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << "step,train_kl,train_err,test_err\n" << std::setprecision(17);
  for (const auto& row : trace) {
    out << row.step << ',' << row.train_kl << ',' << row.train_err << ',';
    if (row.test_err) out << *row.test_err;
    out << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace ricap
