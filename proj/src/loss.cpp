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

#include "ricap/loss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ricap/errors.hpp"

namespace ricap {
namespace {

void check_sizes(std::span<const double> logits, std::span<const double> target) {
  if (logits.size() != target.size()) {
    throw InputError("target has " + std::to_string(target.size()) + " classes, logits have " +
                     std::to_string(logits.size()));
  }
}

}  // namespace

std::vector<double> log_softmax(std::span<const double> logits) {
  if (logits.empty()) throw InputError("logits must be non-empty");
  const double m = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double z : logits) sum += std::exp(z - m);
  const double log_z = m + std::log(sum);
  std::vector<double> out(logits.size());
  for (std::size_t j = 0; j < logits.size(); ++j) out[j] = logits[j] - log_z;
  return out;
}

std::vector<double> softmax(std::span<const double> logits) {
  if (logits.empty()) throw InputError("logits must be non-empty");
  const double m = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double sum = 0.0;
  for (std::size_t j = 0; j < logits.size(); ++j) {
    out[j] = std::exp(logits[j] - m);
    sum += out[j];
  }
  for (double& p : out) p /= sum;
  return out;
}

double entropy(std::span<const double> target) {
  double h = 0.0;
  for (double t : target) {
    if (t > 0.0) h -= t * std::log(t);
  }
  return h;
}

double weighted_ce_loss(std::span<const double> logits, const std::array<std::size_t, 4>& classes,
                        const QuadrantWeights& weights) {
  const auto logp = log_softmax(logits);
  double loss = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    if (classes[k] >= logits.size()) {
      throw LabelError("class id " + std::to_string(classes[k]) + " out of range for " +
                       std::to_string(logits.size()) + " logits");
    }
    loss += weights[k] * -logp[classes[k]];
  }
  return loss;
}

double soft_ce_loss(std::span<const double> logits, std::span<const double> target) {
  check_sizes(logits, target);
  const auto logp = log_softmax(logits);
  double loss = 0.0;
  for (std::size_t j = 0; j < logits.size(); ++j) {
    if (target[j] != 0.0) loss -= target[j] * logp[j];
  }
  return loss;
}

double kl_loss(std::span<const double> logits, std::span<const double> target) {
  check_sizes(logits, target);
  const auto logp = log_softmax(logits);
  double loss = 0.0;
  for (std::size_t j = 0; j < logits.size(); ++j) {
    if (target[j] > 0.0) loss += target[j] * (std::log(target[j]) - logp[j]);
  }
  return loss;
}

std::vector<double> grad_soft_ce(std::span<const double> logits, std::span<const double> target) {
  check_sizes(logits, target);
  auto g = softmax(logits);
  for (std::size_t j = 0; j < g.size(); ++j) g[j] -= target[j];
  return g;
}

}  // namespace ricap
