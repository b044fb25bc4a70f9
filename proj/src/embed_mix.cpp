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

#include "ricap/embed_mix.hpp"

#include <cmath>
#include <string>

#include "ricap/errors.hpp"

namespace ricap {

namespace {

void check_vectors(const std::array<EmbeddingVector, 4>& vectors) {
  const std::size_t dim = vectors[0].size();
  for (std::size_t k = 0; k < 4; ++k) {
    if (vectors[k].size() != dim) {
      throw InputError("embedding " + std::to_string(k) + " has dimension " + std::to_string(vectors[k].size()) +
                       ", expected " + std::to_string(dim));
    }
    for (double v : vectors[k]) {
      if (!std::isfinite(v)) throw InputError("embedding " + std::to_string(k) + " has a non-finite entry");
    }
  }
}

EmbeddingVector weighted_sum(const std::array<EmbeddingVector, 4>& vectors, const std::array<double, 4>& w) {
  const std::size_t dim = vectors[0].size();
  EmbeddingVector out(dim, 0.0);
  for (std::size_t k = 0; k < 4; ++k) {
    if (w[k] == 0.0) continue;
    for (std::size_t j = 0; j < dim; ++j) out[j] += w[k] * vectors[k][j];
  }
  return out;
}

}  // namespace

EmbeddingVector mix_embeddings(const std::array<EmbeddingVector, 4>& vectors, const QuadrantWeights& weights) {
  check_vectors(vectors);
  return weighted_sum(vectors, weights.values());
}

EmbeddingVector mix_embeddings(const std::array<EmbeddingVector, 4>& vectors, const std::array<double, 4>& weights) {
  check_vectors(vectors);
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InputError("mixing weights must be finite and non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw InputError("mixing weights sum to " + std::to_string(total) + ", expected 1");
  }
  return weighted_sum(vectors, weights);
}

}  // namespace ricap
