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

#include "ricap/manifest.hpp"

#include <fstream>
#include <json.hpp>
#include <string>

#include "ricap/errors.hpp"
#include "ricap/png_io.hpp"

namespace ricap {
namespace {

using nlohmann::json;

std::size_t read_class(const json& j, const std::string& where, std::size_t num_classes) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw InputError(where + ": class id must be a non-negative integer");
  }
  const auto id = j.get<std::size_t>();
  if (id >= num_classes) {
    throw InputError(where + ": class id " + std::to_string(id) + " >= num_classes " + std::to_string(num_classes));
  }
  return id;
}

BBox read_box(const json& j, const std::string& where, std::size_t num_classes) {
  if (!j.is_array() || j.size() != 5) {
    throw InputError(where + ": box must be [class_id, cx, cy, w, h]");
  }
  for (std::size_t i = 1; i < 5; ++i) {
    if (!j[i].is_number()) throw InputError(where + ": box coordinates must be numbers");
  }
  BBox box{read_class(j[0], where, num_classes), j[1].get<double>(), j[2].get<double>(), j[3].get<double>(),
           j[4].get<double>()};
  if (!(box.w > 0.0) || !(box.h > 0.0)) {
    throw InputError(where + ": box width and height must be positive");
  }
  return box;
}

}  // namespace

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open manifest '" + path.string() + "'");
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed manifest '" + path.string() + "': " + e.what());
  }
  if (!doc.is_object() || !doc.contains("num_classes") || !doc.contains("entries") || !doc["entries"].is_array()) {
    throw InputError("manifest '" + path.string() + "' needs \"num_classes\" and an \"entries\" array");
  }
  if (!doc["num_classes"].is_number_integer() || doc["num_classes"].get<long long>() < 1) {
    throw InputError("manifest '" + path.string() + "': num_classes must be a positive integer");
  }
  DatasetManifest manifest;
  manifest.num_classes = doc["num_classes"].get<std::size_t>();
  const auto base = path.parent_path();
  const auto& entries = doc["entries"];
  if (entries.empty()) {
    throw InputError("manifest '" + path.string() + "' has no entries");
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    const std::string where = "entry " + std::to_string(i);
    if (!e.is_object() || !e.contains("path") || !e["path"].is_string() || !e.contains("class_id")) {
      throw InputError(where + ": needs \"path\" and \"class_id\"");
    }
    ManifestEntry entry;
    entry.path = e["path"].get<std::string>();
    entry.resolved = entry.path.is_absolute() ? entry.path : base / entry.path;
    if (!std::filesystem::is_regular_file(entry.resolved)) {
      throw IoError(where + ": image file '" + entry.resolved.string() + "' does not exist");
    }
    entry.class_id = read_class(e["class_id"], where, manifest.num_classes);
    if (e.contains("boxes")) {
      if (!e["boxes"].is_array()) throw InputError(where + ": \"boxes\" must be an array");
      std::vector<BBox> boxes;
      for (const auto& b : e["boxes"]) boxes.push_back(read_box(b, where, manifest.num_classes));
      entry.boxes = std::move(boxes);
    }
    manifest.entries.push_back(std::move(entry));
  }
  return manifest;
}

std::vector<Image8> load_images(const DatasetManifest& manifest) {
  std::vector<Image8> images;
  images.reserve(manifest.entries.size());
  for (const auto& entry : manifest.entries) {
    Image8 img = decode_image(entry.resolved);
    if (!images.empty() && !img.same_shape(images.front())) {
      const auto& f = images.front();
      throw InputError("image '" + entry.resolved.string() + "' is " + std::to_string(img.channels()) + "x" +
                       std::to_string(img.width()) + "x" + std::to_string(img.height()) +
                       " (channels x width x height), expected " + std::to_string(f.channels()) + "x" +
                       std::to_string(f.width()) + "x" + std::to_string(f.height()));
    }
    images.push_back(std::move(img));
  }
  return images;
}

}  // namespace ricap
