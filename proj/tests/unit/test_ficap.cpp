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

#include "ricap/ficap.hpp"

using namespace ricap;

namespace {

Image8 random_image(const Canvas& canvas, Rng& rng) {
  Image8 img(3, canvas.height, canvas.width);
  for (auto& p : img.pixels()) p = static_cast<std::uint8_t>(rng.next_u64() >> 56);
  return img;
}

}  // namespace

TEST_CASE("fixed crop origins") {
  CHECK(ficap_crop_origin(Quadrant::LR, {16, 16}) == std::array<std::size_t, 2>{16, 16});
  for (Quadrant q : kQuadrants) CHECK(ficap_crop_origin(q, {0, 0}) == std::array<std::size_t, 2>{0, 0});
  CHECK(ficap_crop_origin(Quadrant::UR, {8, 24}) == std::array<std::size_t, 2>{8, 0});
  CHECK(ficap_crop_origin(Quadrant::LL, {8, 24}) == std::array<std::size_t, 2>{0, 24});
  CHECK(ficap_crop_origin(Quadrant::UL, {8, 24}) == std::array<std::size_t, 2>{0, 0});
}

TEST_CASE("identical sources reconstruct the image for every boundary") {
  Rng rng(1);
  const Canvas canvas{7, 5};
  const std::vector<LabeledImage<std::uint8_t>> one = {{random_image(canvas, rng), 0}};
  for (std::size_t w = 0; w <= canvas.width; ++w) {
    for (std::size_t h = 0; h <= canvas.height; ++h) {
      const BoundaryPosition b{w, h};
      std::array<std::array<std::size_t, 2>, 4> origins{};
      for (std::size_t k = 0; k < 4; ++k) origins[k] = ficap_crop_origin(kQuadrants[k], b);
      REQUIRE(render_patched<std::uint8_t>(one, make_plan(b, {0, 0, 0, 0}, origins, canvas)) == one[0].image);
    }
  }
  // And through the batch entry point.
  std::vector<LabeledImage<std::uint8_t>> copies(5, one[0]);
  for (int t = 0; t < 50; ++t) {
    for (const auto& s : ficap_batch<std::uint8_t>(copies, 1, BetaParam(1.0), rng, BoundaryMode::PerSample)) {
      REQUIRE(s.image == one[0].image);
    }
  }
}

TEST_CASE("every output pixel keeps its absolute position") {
  Rng rng(2);
  const Canvas canvas{12, 9};
  std::vector<LabeledImage<std::uint8_t>> batch;
  for (std::size_t i = 0; i < 4; ++i) batch.push_back({random_image(canvas, rng), i});
  for (int t = 0; t < 100; ++t) {
    for (const auto& s : ficap_batch<std::uint8_t>(batch, 4, BetaParam(0.3), rng)) {
      for (const CropSpec& spec : s.specs) {
        const Rect region = quadrant_rect(spec.quadrant, s.boundary, canvas);
        REQUIRE(spec.source_rect() == region);
        REQUIRE(crop(s.image, region) == crop(batch[spec.source_index].image, region));
      }
      REQUIRE(std::abs(s.label.sum() - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("beta 0 passes images through") {
  Rng rng(3);
  const Canvas canvas{8, 8};
  std::vector<LabeledImage<std::uint8_t>> batch;
  for (std::size_t i = 0; i < 4; ++i) batch.push_back({random_image(canvas, rng), i});
  for (int t = 0; t < 20; ++t) {
    for (const auto& s : ficap_batch<std::uint8_t>(batch, 4, BetaParam(0.0), rng)) {
      bool found = false;
      for (const auto& b : batch) {
        if (b.image == s.image) {
          found = true;
          CHECK(s.label == one_hot(b.class_id, 4));
        }
      }
      CHECK(found);
    }
  }
}
