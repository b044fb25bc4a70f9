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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <json.hpp>
#include <map>
#include <string>

#include "ricap/png_io.hpp"
#include "ricap/sampling.hpp"

namespace ricap::fixture {

namespace fs = std::filesystem;

/// Fresh directory under the system temp dir, removed on destruction.
struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("ricap_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

inline std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

/// Relative path -> file bytes for every regular file below `root`.
inline std::map<std::string, std::string> file_tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), root).generic_string()] = read_file(e.path());
  }
  return files;
}

inline std::string image_path(std::size_t i) {
  char name[32];
  std::snprintf(name, sizeof name, "img/%03zu.png", i);
  return name;
}

/// Writes `n` noisy 32x32 RGB images, each with one 6x8 box, and a manifest
/// assigning class i % classes. Returns the manifest path.
inline fs::path write_dataset(const fs::path& dir, std::size_t n, std::size_t classes) {
  fs::create_directories(dir / "img");
  nlohmann::json entries = nlohmann::json::array();
  Rng rng(77);
  for (std::size_t i = 0; i < n; ++i) {
    Image8 img(3, 32, 32);
    for (auto& v : img.pixels()) v = static_cast<std::uint8_t>(rng.next_u64() >> 56);
    encode_image(img, dir / image_path(i));
    const double cx = 4.0 + static_cast<double>(sample_uniform_int(0, 24, rng));
    const double cy = 4.0 + static_cast<double>(sample_uniform_int(0, 24, rng));
    entries.push_back(
        {{"path", image_path(i)}, {"class_id", i % classes}, {"boxes", {{i % classes, cx, cy, 6.0, 8.0}}}});
  }
  const fs::path manifest = dir / "manifest.json";
  std::ofstream(manifest) << nlohmann::json{{"num_classes", classes}, {"entries", entries}}.dump(1);
  return manifest;
}

}  // namespace ricap::fixture
