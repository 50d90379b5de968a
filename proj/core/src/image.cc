// Copyright 2026 The LIC Codec Authors. All Rights Reserved.
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

#include "lic/image.h"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "lic/status.h"

namespace lic {
namespace {

int RoundUp(int v, int multiple) { return (v + multiple - 1) / multiple * multiple; }

}  // namespace

Image::Image(int w, int h, uint8_t fill)
    : width(w), height(h), rgb(static_cast<size_t>(w) * h * 3, fill) {
  if (w < 1 || h < 1) {
    throw Error(ErrorCode::kConfig, "image dimensions must be >= 1, got " +
                                        std::to_string(w) + "x" +
                                        std::to_string(h));
  }
}

Image ReadPng(const std::filesystem::path& path) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&png, path.c_str())) {
    throw Error(ErrorCode::kIo, "cannot read PNG '" + path.string() +
                                    "': " + png.message);
  }
  if (png.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&png);
    throw Error(ErrorCode::kIo,
                "'" + path.string() + "': only 8-bit PNG is supported");
  }
  png.format = PNG_FORMAT_RGB;
  Image image(static_cast<int>(png.width), static_cast<int>(png.height));
  const png_color black{0, 0, 0};
  if (!png_image_finish_read(&png, &black, image.rgb.data(), 0, nullptr)) {
    throw Error(ErrorCode::kIo, "cannot decode PNG '" + path.string() +
                                    "': " + png.message);
  }
  return image;
}

void WritePng(const Image& image, const std::filesystem::path& path) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width);
  png.height = static_cast<png_uint_32>(image.height);
  png.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&png, path.c_str(), 0, image.rgb.data(), 0,
                               nullptr)) {
    throw Error(ErrorCode::kIo, "cannot write PNG '" + path.string() +
                                    "': " + png.message);
  }
}

Tensor ImageToTensor(const Image& image, int multiple) {
  const int h = RoundUp(image.height, multiple);
  const int w = RoundUp(image.width, multiple);
  Tensor t(Shape{1, 3, h, w});
  for (int c = 0; c < 3; ++c) {
    for (int y = 0; y < h; ++y) {
      const int sy = std::min(y, image.height - 1);
      for (int x = 0; x < w; ++x) {
        const int sx = std::min(x, image.width - 1);
        t.at(0, c, y, x) = static_cast<float>(image.at(sx, sy, c)) / 255.0f;
      }
    }
  }
  return t;
}

Image TensorToImage(const Tensor& t, int width, int height) {
  const Shape& s = t.shape();
  if (s.channels != 3 || s.width < width || s.height < height) {
    throw Error(ErrorCode::kConfig, "cannot crop " + s.ToString() + " to " +
                                        std::to_string(width) + "x" +
                                        std::to_string(height) + " RGB");
  }
  Image image(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < 3; ++c) {
        double v = t.at(0, c, y, x);
        v = v > 0.0 ? std::min(v, 1.0) : 0.0;  // NaN maps to 0
        image.at(x, y, c) = static_cast<uint8_t>(std::round(v * 255.0));
      }
    }
  }
  return image;
}

}  // namespace lic
