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

/// Position-preserving crop origin: UL (0,0), UR (w,0), LL (0,h), LR (w,h).
std::array<std::size_t, 2> ficap_crop_origin(Quadrant quadrant, const BoundaryPosition& boundary);

/// RICAP with fixed crop origins, for aligned imagery where every pixel
/// must stay at its absolute position. Labels are mixed as in RICAP.
template <typename T>
std::vector<AugmentedSample<T>> ficap_batch(std::span<const LabeledImage<T>> batch, std::size_t num_classes,
                                            const BetaParam& beta, Rng& rng,
                                            BoundaryMode mode = BoundaryMode::PerBatch);

}  // namespace ricap
