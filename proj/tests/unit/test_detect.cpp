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

#include "oracles.hpp"
#include "ricap/detect.hpp"
#include "ricap/errors.hpp"

using namespace ricap;

TEST_CASE("transform_bbox examples") {
  const BBox whole{1, 16, 16, 32, 32};
  const auto moved = transform_bbox(whole, Rect{8, 8, 16, 16}, {0, 0});
  REQUIRE(moved);
  CHECK(*moved == BBox{1, 8, 8, 16, 16});

  CHECK_FALSE(transform_bbox(BBox{0, 4, 4, 4, 4}, Rect{16, 16, 8, 8}, {0, 0}));
  // Touching edges only has zero area.
  CHECK_FALSE(transform_bbox(BBox{0, 4, 4, 8, 8}, Rect{8, 0, 8, 8}, {0, 0}));

  const BBox odd{2, 10.3, 7.7, 3.1, 5.9};
  CHECK(*transform_bbox(odd, Rect{0, 0, 32, 32}, {0, 0}) == odd);

  CHECK_THROWS_AS(transform_bbox(BBox{0, 1, 1, 0, 2}, Rect{0, 0, 4, 4}, {0, 0}), InputError);
  CHECK_THROWS_AS(transform_bbox(BBox{0, 1, 1, 1, 1}, Rect{0, 0, 4, 4}, {0, 0}, 1.5), ParameterError);
}

TEST_CASE("min_visibility drops barely visible boxes") {
  const BBox box{0, 8, 8, 8, 8};  // corners (4,4)-(12,12), area 64
  const Rect crop{0, 0, 6, 16};    // visible part (4,4)-(6,12), area 16
  CHECK(transform_bbox(box, crop, {0, 0}, 0.25));
  CHECK_FALSE(transform_bbox(box, crop, {0, 0}, 0.26));
}

TEST_CASE("transform_bbox matches the rasterized mask oracle") {
  Rng rng(1);
  const long n = 24;
  for (int t = 0; t < 2000; ++t) {
    const long x0 = sample_uniform_int(0, n - 1, rng), x1 = sample_uniform_int(x0 + 1, n, rng);
    const long y0 = sample_uniform_int(0, n - 1, rng), y1 = sample_uniform_int(y0 + 1, n, rng);
    const long cw = sample_uniform_int(0, n, rng), ch = sample_uniform_int(0, n, rng);
    const long cx = sample_uniform_int(0, n - cw, rng), cy = sample_uniform_int(0, n - ch, rng);
    const long dx = sample_uniform_int(0, n - cw, rng), dy = sample_uniform_int(0, n - ch, rng);

    const auto expected = oracle::mask_transform({x0, y0, x1, y1}, n, n, cx, cy, cw, ch, dx, dy);
    const auto got = transform_bbox(BBox::from_corners(0, x0, y0, x1, y1),
                                    Rect{static_cast<std::size_t>(cx), static_cast<std::size_t>(cy),
                                         static_cast<std::size_t>(cw), static_cast<std::size_t>(ch)},
                                    {static_cast<std::size_t>(dx), static_cast<std::size_t>(dy)});
    if (expected.empty()) {
      REQUIRE_FALSE(got);
    } else {
      REQUIRE(got);
      REQUIRE(got->left() == expected.x0);
      REQUIRE(got->top() == expected.y0);
      REQUIRE(got->right() == expected.x1);
      REQUIRE(got->bottom() == expected.y1);
    }
  }
}

TEST_CASE("sub-pixel boxes stay within half a pixel of the mask oracle") {
  // The oracle rasterizes pixels whose centers fall inside the box.
  Rng rng(2);
  const long n = 24;
  for (int t = 0; t < 1000; ++t) {
    const double x0 = 20.0 * rng.next_open_unit(), y0 = 20.0 * rng.next_open_unit();
    const double x1 = x0 + 1.0 + 3.0 * rng.next_open_unit(), y1 = y0 + 1.0 + 3.0 * rng.next_open_unit();
    const Rect crop{4, 4, 16, 16};
    const auto got = transform_bbox(BBox::from_corners(0, x0, y0, x1, y1), crop, {0, 0});
    const auto ix0 = static_cast<long>(std::ceil(x0 - 0.5)), iy0 = static_cast<long>(std::ceil(y0 - 0.5));
    const auto ix1 = static_cast<long>(std::floor(x1 - 0.5)) + 1, iy1 = static_cast<long>(std::floor(y1 - 0.5)) + 1;
    const auto expected = oracle::mask_transform({ix0, iy0, ix1, iy1}, n, n, 4, 4, 16, 16, 0, 0);
    if (got && !expected.empty()) {
      REQUIRE(std::abs(got->left() - expected.x0) <= 0.5);
      REQUIRE(std::abs(got->top() - expected.y0) <= 0.5);
      REQUIRE(std::abs(got->right() - expected.x1) <= 0.5);
      REQUIRE(std::abs(got->bottom() - expected.y1) <= 0.5);
    }
  }
}

TEST_CASE("raising min_visibility never adds boxes") {
  Rng rng(3);
  for (int t = 0; t < 500; ++t) {
    const BBox box = BBox::from_corners(0, 10 * rng.next_open_unit(), 10 * rng.next_open_unit(),
                                        10 + 10 * rng.next_open_unit(), 10 + 10 * rng.next_open_unit());
    const Rect crop{static_cast<std::size_t>(sample_uniform_int(0, 10, rng)),
                    static_cast<std::size_t>(sample_uniform_int(0, 10, rng)), 10, 10};
    bool prev = true;
    for (double mv = 0.0; mv <= 1.0; mv += 0.05) {
      const bool kept = transform_bbox(box, crop, {0, 0}, mv).has_value();
      REQUIRE((prev || !kept));
      prev = kept;
    }
  }
}

TEST_CASE("ricap_detection_batch") {
  const Canvas canvas{32, 32};
  std::vector<DetectionSample<std::uint8_t>> batch;
  for (std::size_t i = 0; i < 4; ++i) {
    batch.push_back({Image8(1, 32, 32, static_cast<std::uint8_t>(i)),
                     {BBox{i, 8.0 + i, 9.0, 6.0, 10.0}, BBox{i, 24.0, 20.0 + i, 12.0, 7.5}}});
  }

  SUBCASE("full-image box in the UL quadrant") {
    std::vector<DetectionSample<std::uint8_t>> single = {{Image8(1, 32, 32), {BBox{0, 16, 16, 32, 32}}}};
    const auto plan = make_plan({16, 16}, {0, 0, 0, 0}, {{{8, 8}, {0, 0}, {0, 0}, {0, 0}}}, canvas);
    const auto out = render_detection<std::uint8_t>(single, plan, 0.0);
    REQUIRE(out.boxes.size() == 4);
    CHECK(out.boxes[0] == BBox{0, 8, 8, 16, 16});
  }

  SUBCASE("beta 0 passes samples through") {
    Rng rng(4);
    for (int t = 0; t < 20; ++t) {
      for (const auto& s : ricap_detection_batch<std::uint8_t>(batch, BetaParam(0.0), rng)) {
        const auto src = s.image.pixels()[0];
        CHECK(s.image == batch[src].image);
        CHECK(s.boxes == batch[src].boxes);
      }
    }
  }

  SUBCASE("boxes stay inside their quadrant") {
    Rng rng(5);
    for (int t = 0; t < 200; ++t) {
      auto plans = plan_batch(batch.size(), canvas, BetaParam(1.0), rng, BoundaryMode::PerSample);
      for (const auto& plan : plans) {
        const auto s = render_detection<std::uint8_t>(batch, plan, 0.0);
        for (const auto& box : s.boxes) {
          bool inside = false;
          for (Quadrant q : kQuadrants) {
            const Rect r = quadrant_rect(q, plan.boundary, canvas);
            inside = inside || (box.left() >= r.x && box.top() >= r.y && box.right() <= r.x + r.w &&
                                box.bottom() <= r.y + r.h);
          }
          REQUIRE(inside);
          REQUIRE(box.w > 0.0);
        }
      }
    }
  }

  SUBCASE("heterogeneous images are rejected") {
    Rng rng(6);
    auto bad = batch;
    bad[2].image = Image8(1, 16, 32);
    CHECK_THROWS_AS(ricap_detection_batch<std::uint8_t>(bad, BetaParam(1.0), rng), BatchError);
  }
}
