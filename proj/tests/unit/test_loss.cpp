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

#include "ricap/errors.hpp"
#include "ricap/loss.hpp"

using namespace ricap;

namespace {

std::vector<double> random_logits(std::size_t k, Rng& rng) {
  std::vector<double> z(k);
  for (double& v : z) v = 4.0 * sample_standard_normal(rng);
  return z;
}

std::vector<double> random_simplex(std::size_t k, Rng& rng) {
  std::vector<double> t(k);
  double s = 0.0;
  for (double& v : t) s += (v = -std::log(rng.next_open_unit()));
  for (double& v : t) v /= s;
  return t;
}

std::vector<double> central_difference(const std::vector<double>& z, const std::vector<double>& t,
                                       double (*f)(std::span<const double>, std::span<const double>)) {
  constexpr double h = 1e-5;
  std::vector<double> g(z.size());
  auto probe = z;
  for (std::size_t j = 0; j < z.size(); ++j) {
    probe[j] = z[j] + h;
    const double up = f(probe, t);
    probe[j] = z[j] - h;
    const double down = f(probe, t);
    probe[j] = z[j];
    g[j] = (up - down) / (2 * h);
  }
  return g;
}

double relative_error(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    num += (a[j] - b[j]) * (a[j] - b[j]);
    den += b[j] * b[j];
  }
  return std::sqrt(num) / std::max(std::sqrt(den), 1e-3);
}

}  // namespace

TEST_CASE("softmax") {
  for (double p : softmax(std::vector<double>{2, 2, 2, 2, 2})) CHECK(p == doctest::Approx(0.2).epsilon(1e-15));
  const auto big = softmax(std::vector<double>{1000, 0});
  CHECK(big[0] == doctest::Approx(1.0));
  CHECK(big[1] >= 0.0);
  CHECK(big[1] < 1e-300);
  const auto p = softmax(std::vector<double>{1, 2, 3});
  CHECK(std::abs(p[0] - 0.0900305731703804580) < 1e-15);
  CHECK(std::abs(p[1] - 0.2447284710547976525) < 1e-15);
  CHECK(std::abs(p[2] - 0.6652409557748218895) < 1e-15);
  CHECK_THROWS_AS(softmax(std::vector<double>{}), InputError);
}

TEST_CASE("weighted cross-entropy examples") {
  const std::vector<double> uniform(4, 0.7);
  CHECK(std::abs(weighted_ce_loss(uniform, {0, 1, 2, 3}, QuadrantWeights{{4, 0, 0, 0}, 4}) - 1.3862943611198906) <
        1e-12);
  CHECK(std::abs(weighted_ce_loss(uniform, {0, 1, 2, 3}, QuadrantWeights{{1, 1, 1, 1}, 4}) - 1.3862943611198906) <
        1e-12);
  CHECK_THROWS_AS(weighted_ce_loss(uniform, {0, 1, 2, 4}, QuadrantWeights{{1, 1, 1, 1}, 4}), LabelError);
}

TEST_CASE("soft cross-entropy examples") {
  const std::vector<double> z{0.3, -1.2, 2.0};
  const auto logp = log_softmax(z);
  CHECK(soft_ce_loss(z, std::vector<double>{0, 1, 0}) == doctest::Approx(-logp[1]).epsilon(1e-15));
  const auto p = softmax(z);
  CHECK(std::abs(soft_ce_loss(z, p) - entropy(p)) < 1e-12);
  CHECK(std::abs(soft_ce_loss(std::vector<double>(4, 0.0), std::vector<double>(4, 0.25)) - std::log(4.0)) < 1e-15);
  CHECK_THROWS_AS(soft_ce_loss(z, std::vector<double>{1, 0}), InputError);
}

TEST_CASE("loss identities on random inputs") {
  Rng rng(1);
  const Canvas canvas{32, 32};
  for (int t = 0; t < 1000; ++t) {
    const std::size_t k = static_cast<std::size_t>(sample_uniform_int(2, 12, rng));
    const auto z = random_logits(k, rng);
    const auto w = mix_weights(crop_sizes(draw_boundary(canvas, BetaParam(0.3), rng), canvas), canvas);
    std::array<std::size_t, 4> classes{};
    for (auto& c : classes) c = static_cast<std::size_t>(sample_uniform_int(0, static_cast<std::int64_t>(k - 1), rng));
    const auto target = mix_labels(classes, w, k).probs;
    REQUIRE(std::abs(weighted_ce_loss(z, classes, w) - soft_ce_loss(z, target)) < 1e-12);

    const auto soft = random_simplex(k, rng);
    const double kl = kl_loss(z, soft);
    REQUIRE(std::abs(kl - (soft_ce_loss(z, soft) - entropy(soft))) < 1e-12);
    REQUIRE(kl >= 0.0);
  }
}

TEST_CASE("KL is zero exactly at the model distribution") {
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const auto z = random_logits(6, rng);
    REQUIRE(std::abs(kl_loss(z, softmax(z))) < 1e-12);
    auto off = softmax(z);
    off[0] += 0.01;
    off[1] -= std::min(0.01, off[1]);
    double s = 0.0;
    for (double v : off) s += v;
    for (double& v : off) v /= s;
    REQUIRE(kl_loss(z, off) > 1e-12);
  }
  // Hard target, confident correct logits.
  CHECK(kl_loss(std::vector<double>{50, 0, 0}, std::vector<double>{1, 0, 0}) < 1e-12);
}

TEST_CASE("analytic gradients match central differences") {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const std::size_t k = static_cast<std::size_t>(sample_uniform_int(2, 10, rng));
    const auto z = random_logits(k, rng);
    const auto target = random_simplex(k, rng);
    const auto g = grad_soft_ce(z, target);
    REQUIRE(relative_error(central_difference(z, target, &soft_ce_loss), g) < 1e-6);
    REQUIRE(relative_error(central_difference(z, target, &kl_loss), grad_kl(z, target)) < 1e-6);
    double sum = 0.0;
    for (double v : g) sum += v;
    REQUIRE(std::abs(sum) < 1e-12);
  }
  const std::vector<double> z{0.1, 0.4, -2.0};
  for (double v : grad_soft_ce(z, softmax(z))) CHECK(std::abs(v) < 1e-15);
}
