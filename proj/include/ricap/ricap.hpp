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
#include <cstdint>
#include <span>
#include <vector>

#include "ricap/image.hpp"
#include "ricap/sampling.hpp"

namespace ricap {

/// Width and height of one quadrant's crop.
struct CropSize {
  std::size_t w = 0;
  std::size_t h = 0;

  bool operator==(const CropSize&) const = default;
};

/// Where one quadrant's pixels come from: a batch index and a source
/// rectangle, plus the quadrant it is placed into.
struct CropSpec {
  Quadrant quadrant = Quadrant::UL;
  std::size_t source_index = 0;
  std::size_t x = 0;
  std::size_t y = 0;
  std::size_t w = 0;
  std::size_t h = 0;

  Rect source_rect() const { return {x, y, w, h}; }
  bool operator==(const CropSpec&) const = default;
};

/// Area-proportional mixing weights, kept as exact integer pixel counts over
/// the canvas area so that the four weights sum to one exactly.
struct QuadrantWeights {
  std::array<std::uint64_t, 4> areas{};
  std::uint64_t total = 1;

  double operator[](std::size_t k) const {
    return static_cast<double>(areas[k]) / static_cast<double>(total);
  }
  std::array<double, 4> values() const { return {(*this)[0], (*this)[1], (*this)[2], (*this)[3]}; }
  bool conserves_area() const { return areas[0] + areas[1] + areas[2] + areas[3] == total; }
};

struct SoftLabel {
  std::vector<double> probs;

  double sum() const;
  bool operator==(const SoftLabel&) const = default;
};

SoftLabel one_hot(std::size_t class_id, std::size_t num_classes);

/// Boundary and per-quadrant crops for one output sample.
struct SamplePlan {
  BoundaryPosition boundary;
  std::array<CropSpec, 4> specs;
};

enum class BoundaryMode : std::uint8_t {
  /// One boundary for the whole batch; quadrant k takes its sources from
  /// an independent whole-batch permutation and a single crop origin.
  PerBatch,
  /// Every output draws its own boundary, sources and origins.
  PerSample,
};

enum class OriginRule : std::uint8_t {
  /// Origins uniform over [0, I_x - w_k] x [0, I_y - h_k].
  Random,
  /// Each crop is taken from the region it occupies on the canvas.
  Fixed,
};

template <typename T>
struct LabeledImage {
  ImageTensor<T> image;
  std::size_t class_id = 0;
};

template <typename T>
struct SoftLabeledImage {
  ImageTensor<T> image;
  SoftLabel label;
};

template <typename T>
struct AugmentedSample {
  ImageTensor<T> image;
  SoftLabel label;
  QuadrantWeights weights;
  BoundaryPosition boundary;
  std::array<CropSpec, 4> specs;
};

/// Round to nearest, ties to even.
double round_half_even(double v);

/// (round(wf * I_x), round(hf * I_y)) for fractions in [0, 1].
BoundaryPosition boundary_from_fractions(double wf, double hf, const Canvas& canvas);

/// Boundary from two independent Beta(beta, beta) fractions.
BoundaryPosition draw_boundary(const Canvas& canvas, const BetaParam& beta, Rng& rng);

/// Crop sizes in quadrant order UL, UR, LL, LR.
std::array<CropSize, 4> crop_sizes(const BoundaryPosition& boundary, const Canvas& canvas);

QuadrantWeights mix_weights(const std::array<CropSize, 4>& sizes, const Canvas& canvas);

/// probs[j] = sum of W_k over quadrants whose class is j. Accumulates the
/// integer areas before dividing, so labels are exact ratios.
SoftLabel mix_labels(const std::array<std::size_t, 4>& classes, const QuadrantWeights& weights,
                     std::size_t num_classes);

/// Index of the largest weight; ties go to the lowest quadrant index.
std::size_t dominant_quadrant(const QuadrantWeights& weights);

/// Draws `n` sample plans on `canvas`. See BoundaryMode for the two batch
/// semantics.
std::vector<SamplePlan> plan_batch(std::size_t n, const Canvas& canvas, const BetaParam& beta, Rng& rng,
                                   BoundaryMode mode, OriginRule origins = OriginRule::Random);

/// Plan for a fixed boundary and fixed source indices with the given origin rule.
SamplePlan make_plan(const BoundaryPosition& boundary, const std::array<std::size_t, 4>& sources,
                     const std::array<std::array<std::size_t, 2>, 4>& origins, const Canvas& canvas);

/// Throws BatchError for an empty batch or images of differing shape.
template <typename T>
Canvas check_batch(std::span<const LabeledImage<T>> batch, std::size_t num_classes);

template <typename T>
ImageTensor<T> render_patched(std::span<const LabeledImage<T>> batch, const SamplePlan& plan);

template <typename T>
AugmentedSample<T> render_ricap(std::span<const LabeledImage<T>> batch, std::size_t num_classes,
                                const SamplePlan& plan);

template <typename T>
std::vector<AugmentedSample<T>> ricap_batch(std::span<const LabeledImage<T>> batch, std::size_t num_classes,
                                            const BetaParam& beta, Rng& rng,
                                            BoundaryMode mode = BoundaryMode::PerBatch);

/// Image mixing without label mixing: the patched image with the class of
/// the largest quadrant.
template <typename T>
std::vector<LabeledImage<T>> ricap_image_only(std::span<const LabeledImage<T>> batch, std::size_t num_classes,
                                              const BetaParam& beta, Rng& rng,
                                              BoundaryMode mode = BoundaryMode::PerBatch);

/// Label mixing without image mixing: the unmodified image of the largest
/// quadrant's source with the full four-way soft label.
template <typename T>
SoftLabeledImage<T> render_label_only(std::span<const LabeledImage<T>> batch, std::size_t num_classes,
                                      const SamplePlan& plan);

template <typename T>
std::vector<SoftLabeledImage<T>> ricap_label_only(std::span<const LabeledImage<T>> batch,
                                                  std::size_t num_classes, const BetaParam& beta, Rng& rng,
                                                  BoundaryMode mode = BoundaryMode::PerBatch);

/// Pixel-wise sum of W_k * image_k. All four images must share a shape.
ImageF four_mixup_blend(const std::array<const ImageF*, 4>& images, const QuadrantWeights& weights);

SoftLabeledImage<float> render_four_mixup(std::span<const LabeledImage<float>> batch, std::size_t num_classes,
                                          const SamplePlan& plan);

/// Four-image alpha blend whose weights come from the same boundary draw
/// RICAP would use.
std::vector<SoftLabeledImage<float>> four_mixup(std::span<const LabeledImage<float>> batch,
                                                std::size_t num_classes, const BetaParam& beta, Rng& rng,
                                                BoundaryMode mode = BoundaryMode::PerBatch);

// The templates above are instantiated for std::uint8_t and float.

}  // namespace ricap
