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

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "ricap/ricap.hpp"

namespace ricap {

// Soft-label loss kernels. All take raw logits and work in double
// precision; targets are probability vectors over the same classes.

std::vector<double> softmax(std::span<const double> logits);

/// log(softmax(logits)) computed as logits - max - log(sum(exp(logits - max))).
std::vector<double> log_softmax(std::span<const double> logits);

/// Shannon entropy with 0 log 0 = 0.
double entropy(std::span<const double> target);

/// sum_k W_k * CE(logits, class_k): the four-term loss of the reference
/// training loop. Throws LabelError for class ids outside the logits.
double weighted_ce_loss(std::span<const double> logits, const std::array<std::size_t, 4>& classes,
                        const QuadrantWeights& weights);

/// -sum_j target_j * log softmax(logits)_j
double soft_ce_loss(std::span<const double> logits, std::span<const double> target);

/// KL(target || softmax(logits)); zero for both hard and soft targets at
/// the optimum, unlike soft_ce_loss.
double kl_loss(std::span<const double> logits, std::span<const double> target);

/// d soft_ce / d logits = softmax(logits) - target. KL has the same gradient.
std::vector<double> grad_soft_ce(std::span<const double> logits, std::span<const double> target);

inline std::vector<double> grad_kl(std::span<const double> logits, std::span<const double> target) {
  return grad_soft_ce(logits, target);
}

}  // namespace ricap
