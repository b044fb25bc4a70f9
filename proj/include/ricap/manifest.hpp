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
#include <filesystem>
#include <optional>
#include <vector>

#include "ricap/detect.hpp"
#include "ricap/image.hpp"

namespace ricap {

// Manifest schema (JSON):
//
//   {
//     "num_classes": 10,
//     "entries": [
//       {"path": "img/0001.png", "class_id": 3,
//        "boxes": [[class_id, cx, cy, w, h], ...]},      // optional
//       ...
//     ]
//   }
//
// Relative paths resolve against the manifest's directory. Boxes are in
// absolute pixels, center form.

struct ManifestEntry {
  /// Path as written in the manifest.
  std::filesystem::path path;
  /// `path` resolved against the manifest directory.
  std::filesystem::path resolved;
  std::size_t class_id = 0;
  std::optional<std::vector<BBox>> boxes;
};

struct DatasetManifest {
  std::size_t num_classes = 0;
  std::vector<ManifestEntry> entries;
};

/// Parses and validates a manifest. Throws IoError naming the offending
/// path for missing files and InputError for schema violations.
DatasetManifest load_manifest(const std::filesystem::path& path);

/// Decodes every entry; all images must share channels and size.
std::vector<Image8> load_images(const DatasetManifest& manifest);

}  // namespace ricap
