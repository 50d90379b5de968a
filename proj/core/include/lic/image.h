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

#ifndef LIC_IMAGE_H_
#define LIC_IMAGE_H_

#include <stdint.h>

#include <filesystem>
#include <vector>

#include "lic/tensor.h"

namespace lic {

// Interleaved 8-bit RGB.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> rgb;

  Image() = default;
  Image(int w, int h, uint8_t fill = 0);

  uint8_t& at(int x, int y, int c) { return rgb[(static_cast<size_t>(y) * width + x) * 3 + c]; }
  uint8_t at(int x, int y, int c) const { return rgb[(static_cast<size_t>(y) * width + x) * 3 + c]; }

  bool operator==(const Image&) const = default;
};

// 8-bit PNG only; grey, palette and alpha inputs are expanded to RGB (alpha
// composited on black). 16-bit inputs are rejected.
Image ReadPng(const std::filesystem::path& path);
void WritePng(const Image& image, const std::filesystem::path& path);

// Replicate-pads to the next multiple of `multiple` and scales to [0, 1].
Tensor ImageToTensor(const Image& image, int multiple);

// Clamps to [0, 1], scales by 255, rounds half away from zero and crops to
// width x height.
Image TensorToImage(const Tensor& t, int width, int height);

}  // namespace lic

#endif  // LIC_IMAGE_H_
