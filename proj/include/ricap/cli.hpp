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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ricap/ricap.hpp"

namespace ricap::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitInvariant = 2;

enum class Variant : std::uint8_t { Ricap, RicapImageOnly, RicapLabelOnly, FourMixup, Ficap, Detect };

/// Parses a --variant value; throws ParameterError for unknown names.
Variant parse_variant(const std::string& name);
std::string variant_name(Variant v);

BoundaryMode parse_boundary_mode(const std::string& name);

/// "32x32" -> {32, 32}
Canvas parse_canvas(const std::string& text);

struct AugmentOptions {
  std::filesystem::path manifest;
  std::filesystem::path out;
  std::string variant = "ricap";
  double beta = 0.3;
  std::uint64_t seed = 0;
  std::size_t batch_size = 32;
  std::string boundary = "per-batch";
  double min_visibility = 0.0;
};

/// Writes <out>/images/NNNNNN.png and <out>/records.jsonl, one record per
/// input image in input order. Batches are consecutive runs of
/// `batch_size` manifest entries; batch b draws from Rng(seed).child(b).
/// Returns the number of records written.
std::size_t cmd_augment(const AugmentOptions& options);

/// Re-reads <out>/records.jsonl and checks every record: labels re-derive
/// from provenance and sum to one, and boxes lie inside their quadrant and
/// the canvas. Returns a description of each violation.
std::vector<std::string> verify_augment_output(const std::filesystem::path& out);

struct StatsOptions {
  double beta = 1.0;
  std::size_t samples = 100000;
  std::string canvas = "32x32";
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> csv;
};

struct StatsReport {
  Canvas canvas;
  std::vector<std::size_t> w_hist;
  std::vector<std::size_t> h_hist;
  /// Counts of W_k in 20 equal bins over [0, 1]; the last bin includes 1.
  std::array<std::vector<std::size_t>, 4> weight_hist;
  double mean_wf = 0.0;
  double var_wf = 0.0;
  double mean_hf = 0.0;
  double var_hf = 0.0;
  double expected_var = 0.0;
  /// Largest |z| of a w-histogram bin against the exact discrete law;
  /// only available for beta 0 and beta 1.
  std::optional<double> max_abs_z_w;
};

/// Draws `samples` boundaries and summarizes them.
StatsReport cmd_stats(const StatsOptions& options);

/// CSV with header series,bin,count. Series w and h are indexed by pixel
/// position; W1..W4 by the lower edge of each weight bin.
void write_stats_csv(std::ostream& out, const StatsReport& report);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ricap::cli
