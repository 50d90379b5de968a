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

#include "lic/tensor.h"

#include <string.h>

#include <algorithm>
#include <utility>

#include "lic/status.h"

namespace lic {
namespace {

void CheckShape(const Shape& shape) {
  if (shape.batch < 1 || shape.channels < 1 || shape.height < 1 ||
      shape.width < 1) {
    throw Error(ErrorCode::kConfig,
                "tensor dimensions must be >= 1, got " + shape.ToString());
  }
}

}  // namespace

std::string Shape::ToString() const {
  return "(" + std::to_string(batch) + "," + std::to_string(channels) + "," +
         std::to_string(height) + "," + std::to_string(width) + ")";
}

Tensor::Tensor(const Shape& shape, float fill) : shape_(shape) {
  CheckShape(shape);
  data_.assign(shape.size(), fill);
}

Tensor::Tensor(const Shape& shape, std::vector<float> data)
    : shape_(shape), data_(std::move(data)) {
  CheckShape(shape);
  if (data_.size() != shape.size()) {
    throw Error(ErrorCode::kConfig,
                "tensor data length " + std::to_string(data_.size()) +
                    " does not match shape " + shape.ToString());
  }
}

bool Tensor::BitwiseEquals(const Tensor& other) const {
  return shape_ == other.shape_ &&
         memcmp(data_.data(), other.data_.data(),
                data_.size() * sizeof(float)) == 0;
}

Tensor ConcatChannels(std::span<const Tensor* const> parts) {
  if (parts.empty()) {
    throw Error(ErrorCode::kConfig, "ConcatChannels: no inputs");
  }
  Shape shape = parts[0]->shape();
  shape.channels = 0;
  for (const Tensor* t : parts) {
    const Shape& s = t->shape();
    if (s.batch != shape.batch || s.height != shape.height ||
        s.width != shape.width) {
      throw Error(ErrorCode::kConfig, "ConcatChannels: shape " +
                                          s.ToString() +
                                          " does not match first input");
    }
    shape.channels += s.channels;
  }
  Tensor out(shape);
  for (int n = 0; n < shape.batch; ++n) {
    int c_out = 0;
    for (const Tensor* t : parts) {
      for (int c = 0; c < t->shape().channels; ++c, ++c_out) {
        std::span<const float> src = t->Plane(n, c);
        std::copy(src.begin(), src.end(), out.Plane(n, c_out).begin());
      }
    }
  }
  return out;
}

Tensor SliceChannels(const Tensor& t, int begin, int end) {
  if (begin < 0 || end > t.shape().channels || begin >= end) {
    throw Error(ErrorCode::kConfig,
                "SliceChannels: bad range [" + std::to_string(begin) + "," +
                    std::to_string(end) + ") for " + t.shape().ToString());
  }
  Shape shape = t.shape();
  shape.channels = end - begin;
  Tensor out(shape);
  for (int n = 0; n < shape.batch; ++n) {
    for (int c = begin; c < end; ++c) {
      std::span<const float> src = t.Plane(n, c);
      std::copy(src.begin(), src.end(), out.Plane(n, c - begin).begin());
    }
  }
  return out;
}

}  // namespace lic
