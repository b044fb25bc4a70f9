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
#include <vector>

#include "ricap/ricap.hpp"

namespace ricap {

using EmbeddingVector = std::vector<double>;

/// Area-weighted sum of the four caption embeddings paired with a patched
/// image: sum_k W_k * v_k. Throws InputError on mismatched dimensions or
/// non-finite entries.
EmbeddingVector mix_embeddings(const std::array<EmbeddingVector, 4>& vectors, const QuadrantWeights& weights);

/// Same mix with explicit real weights; they must be non-negative and sum
/// to one within 1e-9.
EmbeddingVector mix_embeddings(const std::array<EmbeddingVector, 4>& vectors, const std::array<double, 4>& weights);

}  // namespace ricap
