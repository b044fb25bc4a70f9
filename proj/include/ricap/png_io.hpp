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

#include <filesystem>

#include "ricap/image.hpp"

namespace ricap {

/// Decodes an 8-bit PNG. Gray inputs give 1 channel, color inputs 3, and
/// anything with alpha 4 (gray+alpha is expanded to RGBA). Throws IoError.
Image8 decode_image(const std::filesystem::path& path);

/// Writes `image` as an 8-bit PNG with fixed encoder settings, so equal
/// images always produce equal bytes.
void encode_image(const Image8& image, const std::filesystem::path& path);

}  // namespace ricap
