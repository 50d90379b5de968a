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

#ifndef LIC_TENSOR_H_
#define LIC_TENSOR_H_

#include <stddef.h>

#include <span>
#include <string>
#include <vector>

namespace lic {

// Dimensions of a dense NCHW tensor. Every dimension is at least 1.
struct Shape {
  int batch = 1;
  int channels = 1;
  int height = 1;
  int width = 1;

  size_t size() const {
    return static_cast<size_t>(batch) * channels * height * width;
  }
  bool operator==(const Shape&) const = default;

  std::string ToString() const;
};

// Row-major 32-bit float tensor: width is the fastest-varying index.
class Tensor {
 public:
  Tensor() : data_(1, 0.0f) {}
  explicit Tensor(const Shape& shape, float fill = 0.0f);
  Tensor(const Shape& shape, std::vector<float> data);

  const Shape& shape() const { return shape_; }
  size_t size() const { return data_.size(); }

  size_t Index(int n, int c, int y, int x) const {
    return ((static_cast<size_t>(n) * shape_.channels + c) * shape_.height +
            y) *
               shape_.width +
           x;
  }
  float& at(int n, int c, int y, int x) { return data_[Index(n, c, y, x)]; }
  float at(int n, int c, int y, int x) const {
    return data_[Index(n, c, y, x)];
  }

  std::span<float> data() { return data_; }
  std::span<const float> data() const { return data_; }

  // One (height x width) plane.
  std::span<float> Plane(int n, int c) {
    return std::span<float>(data_).subspan(Index(n, c, 0, 0),
                                           PlaneSize());
  }
  std::span<const float> Plane(int n, int c) const {
    return std::span<const float>(data_).subspan(Index(n, c, 0, 0),
                                                 PlaneSize());
  }
  size_t PlaneSize() const {
    return static_cast<size_t>(shape_.height) * shape_.width;
  }

  // Bitwise comparison (distinguishes -0.0f from 0.0f and NaN payloads).
  bool BitwiseEquals(const Tensor& other) const;

 private:
  Shape shape_;
  std::vector<float> data_;
};

// Stacks the channels of `parts` (equal batch/height/width) in order.
Tensor ConcatChannels(std::span<const Tensor* const> parts);

// Channels [begin, end) of `t`.
Tensor SliceChannels(const Tensor& t, int begin, int end);

}  // namespace lic

#endif  // LIC_TENSOR_H_
