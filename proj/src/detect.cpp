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

#include "ricap/detect.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ricap {

BBox BBox::from_corners(std::size_t class_id, double x0, double y0, double x1, double y1) {
  return {class_id, 0.5 * (x0 + x1), 0.5 * (y0 + y1), x1 - x0, y1 - y0};
}

std::optional<BBox> transform_bbox(const BBox& box, const Rect& crop, const Placement& placement,
                                   double min_visibility) {
  if (!(box.w > 0.0) || !(box.h > 0.0) || !std::isfinite(box.cx) || !std::isfinite(box.cy)) {
    throw InputError("bounding box must have positive finite extent, got " + std::to_string(box.w) + "x" +
                     std::to_string(box.h));
  }
  if (!(min_visibility >= 0.0 && min_visibility <= 1.0)) {
    throw ParameterError("min_visibility must lie in [0, 1]");
  }
  const double cx0 = static_cast<double>(crop.x);
  const double cy0 = static_cast<double>(crop.y);
  const double cx1 = cx0 + static_cast<double>(crop.w);
  const double cy1 = cy0 + static_cast<double>(crop.h);

  const double x0 = std::max(box.left(), cx0);
  const double y0 = std::max(box.top(), cy0);
  const double x1 = std::min(box.right(), cx1);
  const double y1 = std::min(box.bottom(), cy1);
  if (!(x1 > x0) || !(y1 > y0)) {
    return std::nullopt;
  }
  const double visible = (x1 - x0) * (y1 - y0);
  if (visible < min_visibility * box.area()) {
    return std::nullopt;
  }
  const double sx = static_cast<double>(placement.dx) - cx0;
  const double sy = static_cast<double>(placement.dy) - cy0;
  if (box.left() >= cx0 && box.top() >= cy0 && box.right() <= cx1 && box.bottom() <= cy1) {
    // Unclipped: translate the center and keep the extent bit-exact.
    return BBox{box.class_id, box.cx + sx, box.cy + sy, box.w, box.h};
  }
  return BBox::from_corners(box.class_id, x0 + sx, y0 + sy, x1 + sx, y1 + sy);
}

std::vector<BBox> transform_plan_boxes(std::span<const std::vector<BBox>> source_boxes, const SamplePlan& plan,
                                       const Canvas& canvas, double min_visibility) {
  std::vector<BBox> out;
  for (const CropSpec& spec : plan.specs) {
    if (spec.w == 0 || spec.h == 0) continue;
    const Rect dst = quadrant_rect(spec.quadrant, plan.boundary, canvas);
    for (const BBox& box : source_boxes[spec.source_index]) {
      if (auto moved = transform_bbox(box, spec.source_rect(), {dst.x, dst.y}, min_visibility)) {
        out.push_back(*moved);
      }
    }
  }
  return out;
}

template <typename T>
DetectionSample<T> render_detection(std::span<const DetectionSample<T>> batch, const SamplePlan& plan,
                                    double min_visibility) {
  if (batch.empty()) {
    throw BatchError("batch is empty");
  }
  const Canvas canvas = batch.front().image.canvas();
  std::array<ImageTensor<T>, 4> patches;
  std::vector<std::vector<BBox>> boxes(batch.size());
  for (std::size_t k = 0; k < 4; ++k) {
    const CropSpec& spec = plan.specs[k];
    if (spec.source_index >= batch.size()) {
      throw BatchError("crop source " + std::to_string(spec.source_index) + " outside batch");
    }
    patches[k] = crop(batch[spec.source_index].image, spec.source_rect());
  }
  for (std::size_t i = 0; i < batch.size(); ++i) boxes[i] = batch[i].boxes;
  DetectionSample<T> out;
  out.image = patch_compose(patches[0], patches[1], patches[2], patches[3], plan.boundary, canvas);
  out.boxes = transform_plan_boxes(boxes, plan, canvas, min_visibility);
  return out;
}

template <typename T>
std::vector<DetectionSample<T>> ricap_detection_batch(std::span<const DetectionSample<T>> batch,
                                                      const BetaParam& beta, Rng& rng, double min_visibility,
                                                      BoundaryMode mode) {
  if (batch.empty()) {
    throw BatchError("batch is empty");
  }
  const auto& first = batch.front().image;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (!batch[i].image.same_shape(first)) {
      throw BatchError("detection image " + std::to_string(i) + " differs in shape from image 0");
    }
  }
  const auto plans = plan_batch(batch.size(), first.canvas(), beta, rng, mode);
  std::vector<DetectionSample<T>> out;
  out.reserve(plans.size());
  for (const auto& plan : plans) {
    out.push_back(render_detection(batch, plan, min_visibility));
  }
  return out;
}

template DetectionSample<std::uint8_t> render_detection<std::uint8_t>(
    std::span<const DetectionSample<std::uint8_t>>, const SamplePlan&, double);
template DetectionSample<float> render_detection<float>(std::span<const DetectionSample<float>>,
                                                        const SamplePlan&, double);
template std::vector<DetectionSample<std::uint8_t>> ricap_detection_batch<std::uint8_t>(
    std::span<const DetectionSample<std::uint8_t>>, const BetaParam&, Rng&, double, BoundaryMode);
template std::vector<DetectionSample<float>> ricap_detection_batch<float>(
    std::span<const DetectionSample<float>>, const BetaParam&, Rng&, double, BoundaryMode);

}  // namespace ricap
