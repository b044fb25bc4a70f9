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
#include <optional>
#include <span>
#include <vector>

#include "ricap/ricap.hpp"

namespace ricap {

/// Axis-aligned box in absolute pixels, center form.
struct BBox {
  std::size_t class_id = 0;
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;

  double left() const { return cx - 0.5 * w; }
  double top() const { return cy - 0.5 * h; }
  double right() const { return cx + 0.5 * w; }
  double bottom() const { return cy + 0.5 * h; }
  double area() const { return w * h; }

  static BBox from_corners(std::size_t class_id, double x0, double y0, double x1, double y1);
  bool operator==(const BBox&) const = default;
};

/// Where a crop lands on the patched canvas.
struct Placement {
  std::size_t dx = 0;
  std::size_t dy = 0;
};

template <typename T>
struct DetectionSample {
  ImageTensor<T> image;
  std::vector<BBox> boxes;
};

/// Clips `box` to `crop` and moves the visible part into the patched frame.
/// Returns nullopt when nothing is visible or the visible fraction of the
/// original area is below `min_visibility`. Throws InputError for boxes with
/// non-positive area.
std::optional<BBox> transform_bbox(const BBox& box, const Rect& crop, const Placement& placement,
                                   double min_visibility = 0.0);

/// Boxes of every quadrant source after transform_bbox, in quadrant order.
std::vector<BBox> transform_plan_boxes(std::span<const std::vector<BBox>> source_boxes, const SamplePlan& plan,
                                       const Canvas& canvas, double min_visibility);

/// RICAP for detection: images are cropped and patched as in ricap_batch,
/// boxes follow their pixels, and no label mixing happens.
template <typename T>
std::vector<DetectionSample<T>> ricap_detection_batch(std::span<const DetectionSample<T>> batch,
                                                      const BetaParam& beta, Rng& rng, double min_visibility = 0.0,
                                                      BoundaryMode mode = BoundaryMode::PerBatch);

/// Renders one plan over a detection batch.
template <typename T>
DetectionSample<T> render_detection(std::span<const DetectionSample<T>> batch, const SamplePlan& plan,
                                    double min_visibility);

}  // namespace ricap
