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

#include "ricap/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "ricap/errors.hpp"

namespace ricap {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t combine(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ mix64(b + kGolden));
}

// Beta(a, a) for 0 < a < 1. Works in log space: for a = 0.1 the powers
// U^(1/a) underflow long before the ratio becomes ill-defined.
double johnk_beta(double a, Rng& rng) {
  const double inv = 1.0 / a;
  for (;;) {
    const double log_x = std::log(rng.next_open_unit()) * inv;
    const double log_y = std::log(rng.next_open_unit()) * inv;
    const double m = std::max(log_x, log_y);
    const double log_sum = m + std::log(std::exp(log_x - m) + std::exp(log_y - m));
    if (log_sum <= 0.0) {
      return 1.0 / (1.0 + std::exp(log_y - log_x));
    }
  }
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), key_(combine(mix64(seed), stream_id)) {}

std::uint64_t Rng::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double Rng::next_open_unit() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

Rng Rng::child(std::uint64_t index) const { return Rng(seed_, combine(stream_id_, index)); }

BetaParam::BetaParam(double beta) : beta_(beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw ParameterError("beta must be a finite value >= 0, got " + std::to_string(beta));
  }
}

double BetaParam::variance() const {
  if (beta_ == 0.0) return 0.25;
  return (beta_ * beta_) / ((2.0 * beta_) * (2.0 * beta_) * (2.0 * beta_ + 1.0));
}

double sample_standard_normal(Rng& rng) {
  for (;;) {
    const double u = 2.0 * rng.next_open_unit() - 1.0;
    const double v = 2.0 * rng.next_open_unit() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

double sample_gamma(double shape, Rng& rng) {
  if (!(shape >= 1.0) || !std::isfinite(shape)) {
    throw ParameterError("gamma shape must be >= 1, got " + std::to_string(shape));
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = sample_standard_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.next_open_unit();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double sample_beta(const BetaParam& param, Rng& rng) {
  const double b = param.value();
  if (b < 0.0) {
    throw ParameterError("beta must be >= 0");
  }
  if (b == 0.0) {
    return (rng.next_u64() >> 63) ? 1.0 : 0.0;
  }
  if (b < 1.0) {
    return johnk_beta(b, rng);
  }
  const double g1 = sample_gamma(b, rng);
  const double g2 = sample_gamma(b, rng);
  return g1 / (g1 + g2);
}

std::int64_t sample_uniform_int(std::int64_t lo, std::int64_t hi_inclusive, Rng& rng) {
  if (lo > hi_inclusive) {
    throw ParameterError("empty integer range [" + std::to_string(lo) + ", " +
                         std::to_string(hi_inclusive) + "]");
  }
  const std::uint64_t span =
      static_cast<std::uint64_t>(hi_inclusive) - static_cast<std::uint64_t>(lo) + 1U;
  if (span == 0) {
    // Full 64-bit range.
    return static_cast<std::int64_t>(rng.next_u64());
  }
  unsigned __int128 m = static_cast<unsigned __int128>(rng.next_u64()) * span;
  auto low = static_cast<std::uint64_t>(m);
  if (low < span) {
    const std::uint64_t threshold = (0 - span) % span;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(rng.next_u64()) * span;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) +
                                   static_cast<std::uint64_t>(m >> 64));
}

std::vector<std::size_t> sample_permutation(std::size_t n, Rng& rng) {
  if (n == 0) {
    throw ParameterError("permutation size must be >= 1");
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(sample_uniform_int(0, static_cast<std::int64_t>(i), rng));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

}  // namespace ricap
