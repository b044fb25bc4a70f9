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

#include "ricap/image.hpp"

namespace ricap {

std::string_view quadrant_name(Quadrant q) {
  switch (q) {
    case Quadrant::UL: return "UL";
    case Quadrant::UR: return "UR";
    case Quadrant::LL: return "LL";
    case Quadrant::LR: return "LR";
  }
  return "?";
}

void validate_boundary(const BoundaryPosition& boundary, const Canvas& canvas) {
  if (boundary.w > canvas.width || boundary.h > canvas.height) {
    throw ParameterError("boundary (" + std::to_string(boundary.w) + ", " + std::to_string(boundary.h) +
                         ") lies outside the " + std::to_string(canvas.width) + "x" +
                         std::to_string(canvas.height) + " canvas");
  }
}

Rect quadrant_rect(Quadrant q, const BoundaryPosition& b, const Canvas& canvas) {
  switch (q) {
    case Quadrant::UL: return {0, 0, b.w, b.h};
    case Quadrant::UR: return {b.w, 0, canvas.width - b.w, b.h};
    case Quadrant::LL: return {0, b.h, b.w, canvas.height - b.h};
    case Quadrant::LR: return {b.w, b.h, canvas.width - b.w, canvas.height - b.h};
  }
  return {};
}

}  // namespace ricap
