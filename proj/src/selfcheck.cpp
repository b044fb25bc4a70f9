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

#include "ricap/selfcheck.hpp"

#include <cmath>
#include <ostream>

#include "ricap/detect.hpp"
#include "ricap/ficap.hpp"
#include "ricap/loss.hpp"
#include "ricap/ricap.hpp"

namespace ricap {
namespace {

std::vector<LabeledImage<std::uint8_t>> random_batch(std::size_t n, std::size_t channels, const Canvas& canvas,
                                                     std::size_t num_classes, Rng& rng) {
  std::vector<LabeledImage<std::uint8_t>> batch;
  for (std::size_t i = 0; i < n; ++i) {
    Image8 img(channels, canvas.height, canvas.width);
    for (auto& p : img.pixels()) p = static_cast<std::uint8_t>(rng.next_u64() >> 56);
    batch.push_back({std::move(img), static_cast<std::size_t>(sample_uniform_int(0, static_cast<std::int64_t>(num_classes - 1), rng))});
  }
  return batch;
}

std::vector<double> random_logits(std::size_t k, Rng& rng) {
  std::vector<double> z(k);
  for (double& v : z) v = 3.0 * sample_standard_normal(rng);
  return z;
}

std::vector<double> random_simplex(std::size_t k, Rng& rng) {
  std::vector<double> t(k);
  double sum = 0.0;
  for (double& v : t) {
    v = -std::log(rng.next_open_unit());
    sum += v;
  }
  for (double& v : t) v /= sum;
  return t;
}

SelfCheckGroup check_provenance(const SelfCheckOptions& options) {
  SelfCheckGroup g{"provenance"};
  Rng rng(17, 1);
  for (std::size_t trial = 0; trial < 200; ++trial) {
    const Canvas canvas{static_cast<std::size_t>(sample_uniform_int(1, 12, rng)),
                        static_cast<std::size_t>(sample_uniform_int(1, 12, rng))};
    const auto batch = random_batch(4, 3, canvas, 5, rng);
    const BetaParam beta(trial % 3 == 0 ? 0.0 : 0.3);
    auto out = ricap_batch<std::uint8_t>(batch, 5, beta, rng,
                                         trial % 2 ? BoundaryMode::PerSample : BoundaryMode::PerBatch);
    if (options.corrupt_compose && trial == 0) {
      out[0].image.at(0, 0, 0) ^= 0x01;
    }
    for (const auto& s : out) {
      ++g.cases;
      bool ok = true;
      for (const CropSpec& spec : s.specs) {
        const Rect dst = quadrant_rect(spec.quadrant, s.boundary, canvas);
        const auto& src = batch[spec.source_index].image;
        for (std::size_t c = 0; c < 3; ++c) {
          for (std::size_t y = 0; y < dst.h; ++y) {
            for (std::size_t x = 0; x < dst.w; ++x) {
              ok = ok && s.image.at(c, dst.y + y, dst.x + x) == src.at(c, spec.y + y, spec.x + x);
            }
          }
        }
      }
      if (!ok) ++g.failures;
    }
  }
  return g;
}

SelfCheckGroup check_weights() {
  SelfCheckGroup g{"weight_conservation"};
  Rng rng(17, 2);
  for (std::size_t trial = 0; trial < 2000; ++trial) {
    ++g.cases;
    const Canvas canvas{static_cast<std::size_t>(sample_uniform_int(1, 256, rng)),
                        static_cast<std::size_t>(sample_uniform_int(1, 256, rng))};
    const auto b = draw_boundary(canvas, BetaParam(0.3), rng);
    const auto w = mix_weights(crop_sizes(b, canvas), canvas);
    std::array<std::size_t, 4> classes{};
    for (auto& c : classes) c = static_cast<std::size_t>(sample_uniform_int(0, 9, rng));
    const auto label = mix_labels(classes, w, 10);
    bool ok = w.conserves_area() && std::abs(label.sum() - 1.0) <= 1e-12;
    for (double p : label.probs) ok = ok && p >= 0.0;
    if (!ok) ++g.failures;
  }
  return g;
}

SelfCheckGroup check_loss_identities() {
  SelfCheckGroup g{"loss_identities"};
  Rng rng(17, 3);
  for (std::size_t trial = 0; trial < 500; ++trial) {
    ++g.cases;
    const std::size_t k = static_cast<std::size_t>(sample_uniform_int(4, 12, rng));
    const auto z = random_logits(k, rng);
    const Canvas canvas{32, 32};
    const auto w = mix_weights(crop_sizes(draw_boundary(canvas, BetaParam(1.0), rng), canvas), canvas);
    std::array<std::size_t, 4> classes{};
    for (auto& c : classes) c = static_cast<std::size_t>(sample_uniform_int(0, static_cast<std::int64_t>(k - 1), rng));
    const auto target = mix_labels(classes, w, k).probs;
    const double wce = weighted_ce_loss(z, classes, w);
    const double sce = soft_ce_loss(z, target);
    const double kl = kl_loss(z, target);
    bool ok = std::abs(wce - sce) < 1e-12;
    ok = ok && std::abs(kl - (sce - entropy(target))) < 1e-12;
    ok = ok && kl >= -1e-12;
    if (!ok) ++g.failures;
  }
  return g;
}

SelfCheckGroup check_gradients() {
  SelfCheckGroup g{"gradients"};
  Rng rng(17, 4);
  constexpr double kStep = 1e-5;
  for (std::size_t trial = 0; trial < 100; ++trial) {
    ++g.cases;
    const std::size_t k = static_cast<std::size_t>(sample_uniform_int(2, 10, rng));
    auto z = random_logits(k, rng);
    const auto t = random_simplex(k, rng);
    const auto analytic = grad_soft_ce(z, t);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double saved = z[j];
      z[j] = saved + kStep;
      const double up = kl_loss(z, t);
      z[j] = saved - kStep;
      const double down = kl_loss(z, t);
      z[j] = saved;
      const double fd = (up - down) / (2.0 * kStep);
      num += (fd - analytic[j]) * (fd - analytic[j]);
      den += analytic[j] * analytic[j];
    }
    if (std::sqrt(num) > 1e-6 * std::max(std::sqrt(den), 1e-3)) ++g.failures;
  }
  return g;
}

SelfCheckGroup check_ficap() {
  SelfCheckGroup g{"ficap_reconstruction"};
  Rng rng(17, 5);
  const Canvas canvas{9, 7};
  const auto one = random_batch(1, 3, canvas, 1, rng);
  for (std::size_t w = 0; w <= canvas.width; ++w) {
    for (std::size_t h = 0; h <= canvas.height; ++h) {
      ++g.cases;
      const BoundaryPosition b{w, h};
      std::array<std::array<std::size_t, 2>, 4> origins{};
      for (std::size_t k = 0; k < 4; ++k) origins[k] = ficap_crop_origin(kQuadrants[k], b);
      const auto plan = make_plan(b, {0, 0, 0, 0}, origins, canvas);
      if (!(render_patched<std::uint8_t>(one, plan) == one[0].image)) ++g.failures;
    }
  }
  return g;
}

SelfCheckGroup check_detection() {
  SelfCheckGroup g{"detection_containment"};
  Rng rng(17, 6);
  const Canvas canvas{32, 32};
  for (std::size_t trial = 0; trial < 500; ++trial) {
    ++g.cases;
    const auto b = draw_boundary(canvas, BetaParam(1.0), rng);
    const auto sizes = crop_sizes(b, canvas);
    const auto q = static_cast<std::size_t>(sample_uniform_int(0, 3, rng));
    if (sizes[q].w == 0 || sizes[q].h == 0) continue;
    const auto origin_x = static_cast<std::size_t>(sample_uniform_int(0, static_cast<std::int64_t>(32 - sizes[q].w), rng));
    const auto origin_y = static_cast<std::size_t>(sample_uniform_int(0, static_cast<std::int64_t>(32 - sizes[q].h), rng));
    const Rect crop_rect{origin_x, origin_y, sizes[q].w, sizes[q].h};
    const Rect dst = quadrant_rect(kQuadrants[q], b, canvas);
    const double x0 = 32.0 * rng.next_open_unit();
    const double y0 = 32.0 * rng.next_open_unit();
    const double x1 = x0 + (32.0 - x0) * rng.next_open_unit();
    const double y1 = y0 + (32.0 - y0) * rng.next_open_unit();
    const auto box = BBox::from_corners(0, x0, y0, x1, y1);
    const auto moved = transform_bbox(box, crop_rect, {dst.x, dst.y}, 0.0);
    if (moved && (moved->left() < static_cast<double>(dst.x) - 1e-9 ||
                  moved->top() < static_cast<double>(dst.y) - 1e-9 ||
                  moved->right() > static_cast<double>(dst.x + dst.w) + 1e-9 ||
                  moved->bottom() > static_cast<double>(dst.y + dst.h) + 1e-9)) {
      ++g.failures;
    }
  }
  return g;
}

}  // namespace

std::vector<SelfCheckGroup> run_selfcheck(const SelfCheckOptions& options) {
  return {check_provenance(options), check_weights(),  check_loss_identities(),
          check_gradients(),         check_ficap(),    check_detection()};
}

void print_selfcheck(std::ostream& out, const std::vector<SelfCheckGroup>& groups) {
  for (const auto& g : groups) {
    out << (g.passed() ? "PASS " : "FAIL ") << g.name << " cases=" << g.cases << " failures=" << g.failures
        << '\n';
  }
}

}  // namespace ricap
