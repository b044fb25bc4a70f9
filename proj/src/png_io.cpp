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

#include "ricap/png_io.hpp"

#include <png.h>

#include <cstring>
#include <string>
#include <vector>

namespace ricap {
namespace {

struct PngImage {
  png_image image{};

  PngImage() {
    image.version = PNG_IMAGE_VERSION;
  }
  ~PngImage() { png_image_free(&image); }
  PngImage(const PngImage&) = delete;
  PngImage& operator=(const PngImage&) = delete;
};

png_uint_32 format_for(std::size_t channels) {
  switch (channels) {
    case 1: return PNG_FORMAT_GRAY;
    case 3: return PNG_FORMAT_RGB;
    default: return PNG_FORMAT_RGBA;
  }
}

}  // namespace

Image8 decode_image(const std::filesystem::path& path) {
  PngImage png;
  if (!png_image_begin_read_from_file(&png.image, path.c_str())) {
    throw IoError("cannot decode PNG '" + path.string() + "': " + png.image.message);
  }
  std::size_t channels = 1;
  if (png.image.format & PNG_FORMAT_FLAG_ALPHA) {
    channels = 4;
  } else if (png.image.format & PNG_FORMAT_FLAG_COLOR) {
    channels = 3;
  }
  png.image.format = format_for(channels);
  const std::size_t width = png.image.width;
  const std::size_t height = png.image.height;
  std::vector<std::uint8_t> interleaved(PNG_IMAGE_SIZE(png.image));
  if (!png_image_finish_read(&png.image, nullptr, interleaved.data(), 0, nullptr)) {
    throw IoError("cannot decode PNG '" + path.string() + "': " + png.image.message);
  }
  Image8 out(channels, height, width);
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      for (std::size_t c = 0; c < channels; ++c) {
        out.at(c, y, x) = interleaved[(y * width + x) * channels + c];
      }
    }
  }
  return out;
}

void encode_image(const Image8& image, const std::filesystem::path& path) {
  if (image.width() == 0 || image.height() == 0) {
    throw IoError("cannot encode an empty image to '" + path.string() + "'");
  }
  const std::size_t channels = image.channels();
  std::vector<std::uint8_t> interleaved(image.pixels().size());
  for (std::size_t y = 0; y < image.height(); ++y) {
    for (std::size_t x = 0; x < image.width(); ++x) {
      for (std::size_t c = 0; c < channels; ++c) {
        interleaved[(y * image.width() + x) * channels + c] = image.at(c, y, x);
      }
    }
  }
  PngImage png;
  png.image.width = static_cast<png_uint_32>(image.width());
  png.image.height = static_cast<png_uint_32>(image.height());
  png.image.format = format_for(channels);
  if (!png_image_write_to_file(&png.image, path.c_str(), 0, interleaved.data(), 0, nullptr)) {
    throw IoError("cannot write PNG '" + path.string() + "': " + png.image.message);
  }
}

}  // namespace ricap
