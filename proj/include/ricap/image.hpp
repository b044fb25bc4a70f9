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

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ricap/errors.hpp"

namespace ricap {

/// Axis-aligned pixel rectangle. Zero width or height is legal.
struct Rect {
  std::size_t x = 0;
  std::size_t y = 0;
  std::size_t w = 0;
  std::size_t h = 0;

  std::size_t area() const { return w * h; }
  bool operator==(const Rect&) const = default;
};

/// Canvas dimensions (I_x = width, I_y = height).
struct Canvas {
  std::size_t width = 0;
  std::size_t height = 0;

  std::size_t area() const { return width * height; }
  bool operator==(const Canvas&) const = default;
};

/// Pixel coordinate that splits a canvas into four quadrants.
/// Valid for a canvas when w <= width and h <= height.
struct BoundaryPosition {
  std::size_t w = 0;
  std::size_t h = 0;

  bool operator==(const BoundaryPosition&) const = default;
};

enum class Quadrant : std::uint8_t { UL = 0, UR = 1, LL = 2, LR = 3 };

inline constexpr std::array<Quadrant, 4> kQuadrants = {Quadrant::UL, Quadrant::UR, Quadrant::LL,
                                                       Quadrant::LR};

std::string_view quadrant_name(Quadrant q);

/// Throws ParameterError unless `boundary` lies on `canvas`.
void validate_boundary(const BoundaryPosition& boundary, const Canvas& canvas);

/// Region that quadrant `q` occupies on the patched canvas.
Rect quadrant_rect(Quadrant q, const BoundaryPosition& boundary, const Canvas& canvas);

/// Dense image in planar channel-major layout, row-major within a channel.
/// T is std::uint8_t for file pixels or float for normalized data.
template <typename T>
class ImageTensor {
 public:
  using value_type = T;

  ImageTensor() = default;

  ImageTensor(std::size_t channels, std::size_t height, std::size_t width, T fill = T{})
      : channels_(channels), height_(height), width_(width), pixels_(channels * height * width, fill) {
    check_channels(channels);
  }

  ImageTensor(std::size_t channels, std::size_t height, std::size_t width, std::vector<T> pixels)
      : channels_(channels), height_(height), width_(width), pixels_(std::move(pixels)) {
    check_channels(channels);
    if (pixels_.size() != channels * height * width) {
      throw InputError("pixel buffer holds " + std::to_string(pixels_.size()) + " values, expected " +
                       std::to_string(channels * height * width));
    }
  }

  std::size_t channels() const { return channels_; }
  std::size_t height() const { return height_; }
  std::size_t width() const { return width_; }
  Canvas canvas() const { return {width_, height_}; }
  bool empty() const { return pixels_.empty(); }

  T& at(std::size_t c, std::size_t y, std::size_t x) { return pixels_[(c * height_ + y) * width_ + x]; }
  const T& at(std::size_t c, std::size_t y, std::size_t x) const {
    return pixels_[(c * height_ + y) * width_ + x];
  }

  std::span<T> pixels() { return pixels_; }
  std::span<const T> pixels() const { return pixels_; }

  /// Same channel count and canvas.
  bool same_shape(const ImageTensor& other) const {
    return channels_ == other.channels_ && height_ == other.height_ && width_ == other.width_;
  }

  bool operator==(const ImageTensor&) const = default;

 private:
  static void check_channels(std::size_t channels) {
    if (channels != 1 && channels != 3 && channels != 4) {
      throw InputError("image channel count must be 1, 3 or 4, got " + std::to_string(channels));
    }
  }

  std::size_t channels_ = 1;
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<T> pixels_;
};

using Image8 = ImageTensor<std::uint8_t>;
using ImageF = ImageTensor<float>;

/// Copy of `region` of `image`. Throws BoundsError if the region leaves
/// the image.
template <typename T>
ImageTensor<T> crop(const ImageTensor<T>& image, const Rect& region) {
  if (region.x + region.w > image.width()) {
    throw BoundsError("crop x range [" + std::to_string(region.x) + ", " +
                      std::to_string(region.x + region.w) + ") exceeds image width " +
                      std::to_string(image.width()));
  }
  if (region.y + region.h > image.height()) {
    throw BoundsError("crop y range [" + std::to_string(region.y) + ", " +
                      std::to_string(region.y + region.h) + ") exceeds image height " +
                      std::to_string(image.height()));
  }
  ImageTensor<T> out(image.channels(), region.h, region.w);
  if (out.empty()) return out;
  for (std::size_t c = 0; c < image.channels(); ++c) {
    for (std::size_t y = 0; y < region.h; ++y) {
      const T* src = &image.pixels()[(c * image.height() + region.y + y) * image.width() + region.x];
      std::copy(src, src + region.w, &out.pixels()[(c * region.h + y) * region.w]);
    }
  }
  return out;
}

/// Places four patches on a `canvas` split at `boundary`: UL at (0,0), UR at
/// (w,0), LL at (0,h), LR at (w,h). Each patch must match its quadrant size
/// exactly; zero-area patches are allowed and contribute nothing.
template <typename T>
ImageTensor<T> patch_compose(const ImageTensor<T>& ul, const ImageTensor<T>& ur, const ImageTensor<T>& ll,
                             const ImageTensor<T>& lr, const BoundaryPosition& boundary,
                             const Canvas& canvas) {
  validate_boundary(boundary, canvas);
  const std::array<const ImageTensor<T>*, 4> patches = {&ul, &ur, &ll, &lr};
  const std::size_t channels = ul.channels();
  for (Quadrant q : kQuadrants) {
    const auto& patch = *patches[static_cast<std::size_t>(q)];
    const Rect r = quadrant_rect(q, boundary, canvas);
    if (patch.width() != r.w || patch.height() != r.h) {
      throw CompositionError("quadrant " + std::string(quadrant_name(q)) + " expects a " +
                             std::to_string(r.w) + "x" + std::to_string(r.h) + " patch, got " +
                             std::to_string(patch.width()) + "x" + std::to_string(patch.height()));
    }
    if (patch.channels() != channels) {
      throw CompositionError("quadrant " + std::string(quadrant_name(q)) + " has " +
                             std::to_string(patch.channels()) + " channels, expected " +
                             std::to_string(channels));
    }
  }
  ImageTensor<T> out(channels, canvas.height, canvas.width);
  for (Quadrant q : kQuadrants) {
    const auto& patch = *patches[static_cast<std::size_t>(q)];
    const Rect r = quadrant_rect(q, boundary, canvas);
    if (r.area() == 0) continue;
    for (std::size_t c = 0; c < channels; ++c) {
      for (std::size_t y = 0; y < r.h; ++y) {
        const T* src = &patch.pixels()[(c * r.h + y) * r.w];
        std::copy(src, src + r.w, &out.at(c, r.y + y, r.x));
      }
    }
  }
  return out;
}

}  // namespace ricap
