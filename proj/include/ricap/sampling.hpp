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

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ricap {

/// Counter-based 64-bit generator. The output at position n is a pure
/// function of (seed, stream_id, n), so any stream can be rebuilt anywhere
/// without shared state. The mixing function is the SplitMix64 finalizer.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t next_u64();

  /// Uniform double in the open interval (0, 1), 53 bits of resolution.
  double next_open_unit();

  /// Independent child stream keyed by `index`. Does not advance `*this`,
  /// so children can be derived in any order.
  [[nodiscard]] Rng child(std::uint64_t index) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  std::uint64_t position() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Symmetric Beta(beta, beta) parameter. Zero is accepted and means the
/// limiting two-point distribution on {0, 1}.
class BetaParam {
 public:
  /// Throws ParameterError for negative or non-finite values.
  explicit BetaParam(double beta);

  double value() const { return beta_; }
  bool is_degenerate() const { return beta_ == 0.0; }

  /// Closed-form variance of Beta(b, b): b^2 / ((2b)^2 (2b + 1)) = 1 / (4 (2b + 1)).
  double variance() const;

 private:
  double beta_;
};

/// One draw from Beta(beta, beta). Johnk's method below 1, the ratio of two
/// Marsaglia-Tsang gamma variates at or above 1, a fair coin on {0, 1} at 0.
double sample_beta(const BetaParam& param, Rng& rng);

/// Gamma(shape, 1) via Marsaglia-Tsang; shape must be >= 1.
double sample_gamma(double shape, Rng& rng);

/// Standard normal via the Marsaglia polar method.
double sample_standard_normal(Rng& rng);

/// Uniform integer on the closed range [lo, hi_inclusive] (Lemire's
/// nearly-divisionless rejection, no modulo bias).
std::int64_t sample_uniform_int(std::int64_t lo, std::int64_t hi_inclusive, Rng& rng);

/// Uniform permutation of [0, n) by Fisher-Yates.
std::vector<std::size_t> sample_permutation(std::size_t n, Rng& rng);

}  // namespace ricap
