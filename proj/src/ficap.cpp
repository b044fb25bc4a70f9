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

#include "ricap/ficap.hpp"

namespace ricap {

std::array<std::size_t, 2> ficap_crop_origin(Quadrant quadrant, const BoundaryPosition& boundary) {
  switch (quadrant) {
    case Quadrant::UL: return {0, 0};
    case Quadrant::UR: return {boundary.w, 0};
    case Quadrant::LL: return {0, boundary.h};
    case Quadrant::LR: return {boundary.w, boundary.h};
  }
  return {0, 0};
}

template <typename T>
std::vector<AugmentedSample<T>> ficap_batch(std::span<const LabeledImage<T>> batch, std::size_t num_classes,
                                            const BetaParam& beta, Rng& rng, BoundaryMode mode) {
  const Canvas canvas = check_batch(batch, num_classes);
  const auto plans = plan_batch(batch.size(), canvas, beta, rng, mode, OriginRule::Fixed);
  std::vector<AugmentedSample<T>> out;
  out.reserve(plans.size());
  for (const auto& plan : plans) {
    out.push_back(render_ricap(batch, num_classes, plan));
  }
  return out;
}

template std::vector<AugmentedSample<std::uint8_t>> ficap_batch<std::uint8_t>(
    std::span<const LabeledImage<std::uint8_t>>, std::size_t, const BetaParam&, Rng&, BoundaryMode);
template std::vector<AugmentedSample<float>> ficap_batch<float>(std::span<const LabeledImage<float>>, std::size_t,
                                                                const BetaParam&, Rng&, BoundaryMode);

}  // namespace ricap
