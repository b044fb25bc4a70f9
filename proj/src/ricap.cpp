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

#include "ricap/ricap.hpp"

#include <cfenv>
#include <cmath>
#include <numeric>
#include <string>

#include "ricap/errors.hpp"

namespace ricap {
namespace {

std::array<std::size_t, 2> draw_origin(const CropSize& size, const Canvas& canvas, Rng& rng) {
  const auto x = sample_uniform_int(0, static_cast<std::int64_t>(canvas.width - size.w), rng);
  const auto y = sample_uniform_int(0, static_cast<std::int64_t>(canvas.height - size.h), rng);
  return {static_cast<std::size_t>(x), static_cast<std::size_t>(y)};
}

std::array<std::size_t, 2> fixed_origin(Quadrant q, const BoundaryPosition& b, const Canvas& canvas) {
  const Rect r = quadrant_rect(q, b, canvas);
  return {r.x, r.y};
}

template <typename T>
std::array<std::size_t, 4> plan_classes(std::span<const LabeledImage<T>> batch, const SamplePlan& plan) {
  std::array<std::size_t, 4> classes{};
  for (std::size_t k = 0; k < 4; ++k) {
    classes[k] = batch[plan.specs[k].source_index].class_id;
  }
  return classes;
}

QuadrantWeights plan_weights(const SamplePlan& plan, const Canvas& canvas) {
  return mix_weights(crop_sizes(plan.boundary, canvas), canvas);
}

}  // namespace

double SoftLabel::sum() const { return std::accumulate(probs.begin(), probs.end(), 0.0); }

SoftLabel one_hot(std::size_t class_id, std::size_t num_classes) {
  if (class_id >= num_classes) {
    throw LabelError("class id " + std::to_string(class_id) + " out of range for " +
                     std::to_string(num_classes) + " classes");
  }
  SoftLabel label{std::vector<double>(num_classes, 0.0)};
  label.probs[class_id] = 1.0;
  return label;
}

double round_half_even(double v) {
  // nearbyint honours the current rounding mode; force ties-to-even.
  const int saved = std::fegetround();
  std::fesetround(FE_TONEAREST);
  const double r = std::nearbyint(v);
  std::fesetround(saved);
  return r;
}

BoundaryPosition boundary_from_fractions(double wf, double hf, const Canvas& canvas) {
  if (!(wf >= 0.0 && wf <= 1.0) || !(hf >= 0.0 && hf <= 1.0)) {
    throw ParameterError("boundary fractions must lie in [0, 1]");
  }
  const auto w = static_cast<std::size_t>(round_half_even(wf * static_cast<double>(canvas.width)));
  const auto h = static_cast<std::size_t>(round_half_even(hf * static_cast<double>(canvas.height)));
  return {std::min(w, canvas.width), std::min(h, canvas.height)};
}

BoundaryPosition draw_boundary(const Canvas& canvas, const BetaParam& beta, Rng& rng) {
  if (canvas.width == 0 || canvas.height == 0) {
    throw ParameterError("canvas must be at least 1x1");
  }
  const double wf = sample_beta(beta, rng);
  const double hf = sample_beta(beta, rng);
  return boundary_from_fractions(wf, hf, canvas);
}

std::array<CropSize, 4> crop_sizes(const BoundaryPosition& b, const Canvas& canvas) {
  validate_boundary(b, canvas);
  const std::size_t rw = canvas.width - b.w;
  const std::size_t rh = canvas.height - b.h;
  return {CropSize{b.w, b.h}, CropSize{rw, b.h}, CropSize{b.w, rh}, CropSize{rw, rh}};
}

QuadrantWeights mix_weights(const std::array<CropSize, 4>& sizes, const Canvas& canvas) {
  QuadrantWeights weights;
  weights.total = canvas.area();
  if (weights.total == 0) {
    throw ParameterError("canvas must have positive area");
  }
  for (std::size_t k = 0; k < 4; ++k) {
    weights.areas[k] = sizes[k].w * sizes[k].h;
  }
  return weights;
}

SoftLabel mix_labels(const std::array<std::size_t, 4>& classes, const QuadrantWeights& weights,
                     std::size_t num_classes) {
  std::vector<std::uint64_t> mass(num_classes, 0);
  for (std::size_t k = 0; k < 4; ++k) {
    if (classes[k] >= num_classes) {
      throw LabelError("class id " + std::to_string(classes[k]) + " in quadrant " +
                       std::string(quadrant_name(kQuadrants[k])) + " out of range for " +
                       std::to_string(num_classes) + " classes");
    }
    mass[classes[k]] += weights.areas[k];
  }
  SoftLabel label{std::vector<double>(num_classes, 0.0)};
  for (std::size_t j = 0; j < num_classes; ++j) {
    label.probs[j] = static_cast<double>(mass[j]) / static_cast<double>(weights.total);
  }
  return label;
}

std::size_t dominant_quadrant(const QuadrantWeights& weights) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < 4; ++k) {
    if (weights.areas[k] > weights.areas[best]) best = k;
  }
  return best;
}

SamplePlan make_plan(const BoundaryPosition& boundary, const std::array<std::size_t, 4>& sources,
                     const std::array<std::array<std::size_t, 2>, 4>& origins, const Canvas& canvas) {
  const auto sizes = crop_sizes(boundary, canvas);
  SamplePlan plan{boundary, {}};
  for (std::size_t k = 0; k < 4; ++k) {
    if (origins[k][0] + sizes[k].w > canvas.width || origins[k][1] + sizes[k].h > canvas.height) {
      throw BoundsError("crop origin (" + std::to_string(origins[k][0]) + ", " + std::to_string(origins[k][1]) +
                        ") for quadrant " + std::string(quadrant_name(kQuadrants[k])) +
                        " leaves the canvas");
    }
    plan.specs[k] = CropSpec{kQuadrants[k], sources[k], origins[k][0], origins[k][1], sizes[k].w, sizes[k].h};
  }
  return plan;
}

std::vector<SamplePlan> plan_batch(std::size_t n, const Canvas& canvas, const BetaParam& beta, Rng& rng,
                                   BoundaryMode mode, OriginRule origins) {
  if (n == 0) {
    throw BatchError("batch is empty");
  }
  std::vector<SamplePlan> plans(n);
  if (mode == BoundaryMode::PerBatch) {
    const BoundaryPosition boundary = draw_boundary(canvas, beta, rng);
    const auto sizes = crop_sizes(boundary, canvas);
    for (std::size_t k = 0; k < 4; ++k) {
      const auto perm = sample_permutation(n, rng);
      const auto origin = origins == OriginRule::Random ? draw_origin(sizes[k], canvas, rng)
                                                        : fixed_origin(kQuadrants[k], boundary, canvas);
      for (std::size_t i = 0; i < n; ++i) {
        plans[i].boundary = boundary;
        plans[i].specs[k] = CropSpec{kQuadrants[k], perm[i], origin[0], origin[1], sizes[k].w, sizes[k].h};
      }
    }
    return plans;
  }

  // Per-sample streams are keyed by (salt, sample, quadrant) so that any
  // sample can be planned independently of the others.
  const std::uint64_t salt = rng.next_u64();
  const auto last = static_cast<std::int64_t>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    Rng sample_rng(salt, i);
    const BoundaryPosition boundary = draw_boundary(canvas, beta, sample_rng);
    const auto sizes = crop_sizes(boundary, canvas);
    plans[i].boundary = boundary;
    for (std::size_t k = 0; k < 4; ++k) {
      Rng quadrant_rng = sample_rng.child(k);
      const auto source = static_cast<std::size_t>(sample_uniform_int(0, last, quadrant_rng));
      const auto origin = origins == OriginRule::Random ? draw_origin(sizes[k], canvas, quadrant_rng)
                                                        : fixed_origin(kQuadrants[k], boundary, canvas);
      plans[i].specs[k] = CropSpec{kQuadrants[k], source, origin[0], origin[1], sizes[k].w, sizes[k].h};
    }
  }
  return plans;
}

template <typename T>
Canvas check_batch(std::span<const LabeledImage<T>> batch, std::size_t num_classes) {
  if (batch.empty()) {
    throw BatchError("batch is empty");
  }
  const auto& first = batch.front().image;
  if (first.width() == 0 || first.height() == 0) {
    throw BatchError("batch images must be at least 1x1");
  }
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const auto& img = batch[i].image;
    if (!img.same_shape(first)) {
      throw BatchError("image " + std::to_string(i) + " is " + std::to_string(img.channels()) + "x" +
                       std::to_string(img.height()) + "x" + std::to_string(img.width()) +
                       ", batch shape is " + std::to_string(first.channels()) + "x" +
                       std::to_string(first.height()) + "x" + std::to_string(first.width()));
    }
    if (batch[i].class_id >= num_classes) {
      throw LabelError("image " + std::to_string(i) + " has class id " + std::to_string(batch[i].class_id) +
                       " but only " + std::to_string(num_classes) + " classes exist");
    }
  }
  return first.canvas();
}

template <typename T>
ImageTensor<T> render_patched(std::span<const LabeledImage<T>> batch, const SamplePlan& plan) {
  const Canvas canvas = batch.front().image.canvas();
  std::array<ImageTensor<T>, 4> patches;
  for (std::size_t k = 0; k < 4; ++k) {
    const CropSpec& spec = plan.specs[k];
    if (spec.source_index >= batch.size()) {
      throw BatchError("crop source " + std::to_string(spec.source_index) + " outside batch of " +
                       std::to_string(batch.size()));
    }
    patches[k] = crop(batch[spec.source_index].image, spec.source_rect());
  }
  return patch_compose(patches[0], patches[1], patches[2], patches[3], plan.boundary, canvas);
}

template <typename T>
AugmentedSample<T> render_ricap(std::span<const LabeledImage<T>> batch, std::size_t num_classes,
                                const SamplePlan& plan) {
  const Canvas canvas = check_batch(batch, num_classes);
  AugmentedSample<T> out;
  out.image = render_patched(batch, plan);
  out.weights = plan_weights(plan, canvas);
  out.label = mix_labels(plan_classes(batch, plan), out.weights, num_classes);
  out.boundary = plan.boundary;
  out.specs = plan.specs;
  return out;
}

template <typename T>
std::vector<AugmentedSample<T>> ricap_batch(std::span<const LabeledImage<T>> batch, std::size_t num_classes,
                                            const BetaParam& beta, Rng& rng, BoundaryMode mode) {
  const Canvas canvas = check_batch(batch, num_classes);
  const auto plans = plan_batch(batch.size(), canvas, beta, rng, mode);
  std::vector<AugmentedSample<T>> out;
  out.reserve(plans.size());
  for (const auto& plan : plans) {
    out.push_back(render_ricap(batch, num_classes, plan));
  }
  return out;
}

template <typename T>
std::vector<LabeledImage<T>> ricap_image_only(std::span<const LabeledImage<T>> batch, std::size_t num_classes,
                                              const BetaParam& beta, Rng& rng, BoundaryMode mode) {
  const Canvas canvas = check_batch(batch, num_classes);
  const auto plans = plan_batch(batch.size(), canvas, beta, rng, mode);
  std::vector<LabeledImage<T>> out;
  out.reserve(plans.size());
  for (const auto& plan : plans) {
    const std::size_t k = dominant_quadrant(plan_weights(plan, canvas));
    out.push_back({render_patched(batch, plan), batch[plan.specs[k].source_index].class_id});
  }
  return out;
}

template <typename T>
SoftLabeledImage<T> render_label_only(std::span<const LabeledImage<T>> batch, std::size_t num_classes,
                                      const SamplePlan& plan) {
  const Canvas canvas = check_batch(batch, num_classes);
  const QuadrantWeights weights = plan_weights(plan, canvas);
  const std::size_t k = dominant_quadrant(weights);
  return {batch[plan.specs[k].source_index].image, mix_labels(plan_classes(batch, plan), weights, num_classes)};
}

template <typename T>
std::vector<SoftLabeledImage<T>> ricap_label_only(std::span<const LabeledImage<T>> batch,
                                                  std::size_t num_classes, const BetaParam& beta, Rng& rng,
                                                  BoundaryMode mode) {
  const Canvas canvas = check_batch(batch, num_classes);
  const auto plans = plan_batch(batch.size(), canvas, beta, rng, mode);
  std::vector<SoftLabeledImage<T>> out;
  out.reserve(plans.size());
  for (const auto& plan : plans) {
    out.push_back(render_label_only(batch, num_classes, plan));
  }
  return out;
}

ImageF four_mixup_blend(const std::array<const ImageF*, 4>& images, const QuadrantWeights& weights) {
  const ImageF& first = *images[0];
  for (const ImageF* img : images) {
    if (!img->same_shape(first)) {
      throw BatchError("4-mixup images must share a shape");
    }
  }
  ImageF out(first.channels(), first.height(), first.width());
  const auto w = weights.values();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      if (weights.areas[k] == 0) continue;
      acc += w[k] * static_cast<double>(images[k]->pixels()[i]);
    }
    dst[i] = static_cast<float>(acc);
  }
  return out;
}

SoftLabeledImage<float> render_four_mixup(std::span<const LabeledImage<float>> batch, std::size_t num_classes,
                                          const SamplePlan& plan) {
  const Canvas canvas = check_batch(batch, num_classes);
  const QuadrantWeights weights = plan_weights(plan, canvas);
  std::array<const ImageF*, 4> sources{};
  for (std::size_t k = 0; k < 4; ++k) {
    if (plan.specs[k].source_index >= batch.size()) {
      throw BatchError("mixup source outside batch");
    }
    sources[k] = &batch[plan.specs[k].source_index].image;
  }
  return {four_mixup_blend(sources, weights), mix_labels(plan_classes(batch, plan), weights, num_classes)};
}

std::vector<SoftLabeledImage<float>> four_mixup(std::span<const LabeledImage<float>> batch,
                                                std::size_t num_classes, const BetaParam& beta, Rng& rng,
                                                BoundaryMode mode) {
  const Canvas canvas = check_batch(batch, num_classes);
  const auto plans = plan_batch(batch.size(), canvas, beta, rng, mode);
  std::vector<SoftLabeledImage<float>> out;
  out.reserve(plans.size());
  for (const auto& plan : plans) {
    out.push_back(render_four_mixup(batch, num_classes, plan));
  }
  return out;
}

#define RICAP_INSTANTIATE(T)                                                                                   \
  template Canvas check_batch<T>(std::span<const LabeledImage<T>>, std::size_t);                              \
  template ImageTensor<T> render_patched<T>(std::span<const LabeledImage<T>>, const SamplePlan&);             \
  template AugmentedSample<T> render_ricap<T>(std::span<const LabeledImage<T>>, std::size_t,                  \
                                              const SamplePlan&);                                             \
  template std::vector<AugmentedSample<T>> ricap_batch<T>(std::span<const LabeledImage<T>>, std::size_t,      \
                                                          const BetaParam&, Rng&, BoundaryMode);              \
  template std::vector<LabeledImage<T>> ricap_image_only<T>(std::span<const LabeledImage<T>>, std::size_t,    \
                                                            const BetaParam&, Rng&, BoundaryMode);            \
  template SoftLabeledImage<T> render_label_only<T>(std::span<const LabeledImage<T>>, std::size_t,            \
                                                    const SamplePlan&);                                       \
  template std::vector<SoftLabeledImage<T>> ricap_label_only<T>(std::span<const LabeledImage<T>>, std::size_t, \
                                                                const BetaParam&, Rng&, BoundaryMode);

RICAP_INSTANTIATE(std::uint8_t)
RICAP_INSTANTIATE(float)
#undef RICAP_INSTANTIATE

}  // namespace ricap
