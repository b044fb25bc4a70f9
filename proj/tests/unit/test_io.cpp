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

#include <filesystem>
#include <fstream>
#include <string>

#include "fixtures.hpp"
#include "ricap/errors.hpp"
#include "ricap/manifest.hpp"
#include "ricap/png_io.hpp"
#include "ricap/sampling.hpp"

using namespace ricap;
namespace fs = std::filesystem;
using fixture::TempDir;

namespace {

Image8 noise_image(std::size_t c, std::size_t h, std::size_t w, std::uint64_t seed) {
  Image8 img(c, h, w);
  Rng rng(seed);
  for (auto& v : img.pixels()) v = static_cast<std::uint8_t>(rng.next_u64() >> 56);
  return img;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
}

}  // namespace

TEST_CASE("PNG round trip preserves every channel layout") {
  TempDir dir("io_roundtrip");
  for (std::size_t c : {1u, 3u, 4u}) {
    CAPTURE(c);
    const Image8 img = noise_image(c, 13, 21, c);
    const fs::path p = dir.path / ("img" + std::to_string(c) + ".png");
    encode_image(img, p);
    const Image8 back = decode_image(p);
    CHECK(back == img);
  }
}

TEST_CASE("encoding is byte-stable") {
  TempDir dir("io_stable");
  const Image8 img = noise_image(3, 32, 32, 7);
  encode_image(img, dir.path / "a.png");
  encode_image(decode_image(dir.path / "a.png"), dir.path / "b.png");
  std::ifstream a(dir.path / "a.png", std::ios::binary), b(dir.path / "b.png", std::ios::binary);
  const std::string sa((std::istreambuf_iterator<char>(a)), {});
  const std::string sb((std::istreambuf_iterator<char>(b)), {});
  CHECK(sa == sb);
  const Image8 back = decode_image(dir.path / "a.png");
  CHECK(back.channels() == 3);
  CHECK(back.height() == 32);
  CHECK(back.width() == 32);
}

TEST_CASE("PNG errors") {
  TempDir dir("io_errors");
  CHECK_THROWS_AS(decode_image(dir.path / "missing.png"), IoError);
  write_text(dir.path / "junk.png", "this is not a png");
  CHECK_THROWS_AS(decode_image(dir.path / "junk.png"), IoError);
  CHECK_THROWS_AS(encode_image(Image8(3, 0, 4), dir.path / "empty.png"), IoError);
}

TEST_CASE("manifest parsing and validation") {
  TempDir dir("io_manifest");
  fs::create_directories(dir.path / "img");
  encode_image(noise_image(3, 8, 8, 1), dir.path / "img" / "a.png");
  encode_image(noise_image(3, 8, 8, 2), dir.path / "img" / "b.png");
  encode_image(noise_image(3, 9, 8, 3), dir.path / "img" / "odd.png");

  write_text(dir.path / "ok.json", R"({"num_classes": 3, "entries": [
      {"path": "img/a.png", "class_id": 0, "boxes": [[1, 4, 4, 2, 2]]},
      {"path": "img/b.png", "class_id": 2}]})");
  const auto m = load_manifest(dir.path / "ok.json");
  REQUIRE(m.entries.size() == 2);
  CHECK(m.num_classes == 3);
  CHECK(m.entries[0].resolved == dir.path / "img" / "a.png");
  REQUIRE(m.entries[0].boxes.has_value());
  CHECK(m.entries[0].boxes->at(0).class_id == 1);
  CHECK(m.entries[0].boxes->at(0).w == 2.0);
  CHECK_FALSE(m.entries[1].boxes.has_value());
  CHECK(load_images(m).size() == 2);

  write_text(dir.path / "missing.json", R"({"num_classes": 3, "entries": [{"path": "img/nope.png", "class_id": 0}]})");
  try {
    load_manifest(dir.path / "missing.json");
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("nope.png") != std::string::npos);
  }

  CHECK_THROWS_AS(load_manifest(dir.path / "absent.json"), IoError);
  write_text(dir.path / "bad.json", "{not json");
  CHECK_THROWS_AS(load_manifest(dir.path / "bad.json"), InputError);
  write_text(dir.path / "range.json", R"({"num_classes": 2, "entries": [{"path": "img/a.png", "class_id": 2}]})");
  CHECK_THROWS_AS(load_manifest(dir.path / "range.json"), InputError);
  write_text(dir.path / "empty.json", R"({"num_classes": 2, "entries": []})");
  CHECK_THROWS_AS(load_manifest(dir.path / "empty.json"), InputError);
  write_text(dir.path / "box.json",
             R"({"num_classes": 2, "entries": [{"path": "img/a.png", "class_id": 0, "boxes": [[0, 1, 1]]}]})");
  CHECK_THROWS_AS(load_manifest(dir.path / "box.json"), InputError);

  write_text(dir.path / "mixed.json", R"({"num_classes": 2, "entries": [
      {"path": "img/a.png", "class_id": 0}, {"path": "img/odd.png", "class_id": 1}]})");
  CHECK_THROWS_AS(load_images(load_manifest(dir.path / "mixed.json")), InputError);
}
