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

#include <doctest.h>

#include <cmath>

#include "ricap/embed_mix.hpp"
#include "ricap/errors.hpp"

using namespace ricap;

namespace {

double norm(const EmbeddingVector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::array<EmbeddingVector, 4> random_vectors(std::size_t d, Rng& rng) {
  std::array<EmbeddingVector, 4> v;
  for (auto& e : v) {
    e.resize(d);
    for (double& x : e) x = sample_standard_normal(rng);
  }
  return v;
}

QuadrantWeights random_weights(Rng& rng) {
  const Canvas c{32, 32};
  return mix_weights(crop_sizes(draw_boundary(c, BetaParam(1.0), rng), c), c);
}

}  // namespace

TEST_CASE("mix_embeddings examples") {
  std::array<EmbeddingVector, 4> basis = {EmbeddingVector{1, 0, 0, 0}, EmbeddingVector{0, 1, 0, 0},
                                          EmbeddingVector{0, 0, 1, 0}, EmbeddingVector{0, 0, 0, 1}};
  CHECK(mix_embeddings(basis, QuadrantWeights{{1, 1, 1, 1}, 4}) == EmbeddingVector{0.25, 0.25, 0.25, 0.25});
  CHECK(mix_embeddings(basis, QuadrantWeights{{4, 0, 0, 0}, 4}) == basis[0]);

  Rng rng(1);
  const auto v = random_vectors(7, rng);
  CHECK(mix_embeddings(v, QuadrantWeights{{9, 0, 0, 0}, 9}) == v[0]);

  const std::array<EmbeddingVector, 4> same = {v[1], v[1], v[1], v[1]};
  for (int t = 0; t < 50; ++t) {
    const auto m = mix_embeddings(same, random_weights(rng));
    for (std::size_t j = 0; j < m.size(); ++j) REQUIRE(m[j] == doctest::Approx(v[1][j]).epsilon(1e-14));
  }
}

TEST_CASE("mix_embeddings is linear in the vectors") {
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const auto u = random_vectors(5, rng);
    const auto w = random_vectors(5, rng);
    const double a = sample_standard_normal(rng), b = sample_standard_normal(rng);
    std::array<EmbeddingVector, 4> combo;
    for (std::size_t k = 0; k < 4; ++k) {
      combo[k].resize(5);
      for (std::size_t j = 0; j < 5; ++j) combo[k][j] = a * u[k][j] + b * w[k][j];
    }
    const auto weights = random_weights(rng);
    const auto lhs = mix_embeddings(combo, weights);
    const auto mu = mix_embeddings(u, weights), mw = mix_embeddings(w, weights);
    for (std::size_t j = 0; j < 5; ++j) REQUIRE(std::abs(lhs[j] - (a * mu[j] + b * mw[j])) < 1e-12);
  }
}

TEST_CASE("mixed norm is bounded by the largest input norm") {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const auto v = random_vectors(6, rng);
    double bound = 0.0;
    for (const auto& e : v) bound = std::max(bound, norm(e));
    REQUIRE(norm(mix_embeddings(v, random_weights(rng))) <= bound + 1e-12);
  }
}

TEST_CASE("mix_embeddings validates input") {
  std::array<EmbeddingVector, 4> v = {EmbeddingVector{1, 2}, EmbeddingVector{1, 2}, EmbeddingVector{1},
                                      EmbeddingVector{1, 2}};
  CHECK_THROWS_AS(mix_embeddings(v, QuadrantWeights{{1, 1, 1, 1}, 4}), InputError);
  v[2] = {1, NAN};
  CHECK_THROWS_AS(mix_embeddings(v, QuadrantWeights{{1, 1, 1, 1}, 4}), InputError);
  v[2] = {1, 2};
  CHECK_THROWS_AS(mix_embeddings(v, std::array<double, 4>{0.5, 0.5, 0.5, 0}), InputError);
  CHECK_THROWS_AS(mix_embeddings(v, std::array<double, 4>{1.5, -0.5, 0, 0}), InputError);
  CHECK(mix_embeddings(v, std::array<double, 4>{0.25, 0.25, 0.25, 0.25}) == EmbeddingVector{1, 2});
}
