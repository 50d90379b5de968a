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

#ifndef LIC_LAYERS_H_
#define LIC_LAYERS_H_

#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "lic/tensor.h"
#include "lic/weights.h"

namespace lic {

enum class LayerKind { kConv, kDeconv, kRelu, kChannelSoftmax };

const char* LayerKindName(LayerKind kind);
// Throws kMalformed for unknown names.
LayerKind ParseLayerKind(std::string_view name);

// One layer of a network. Conv/deconv layers own the parameters
// "<name>.weight" and "<name>.bias":
//   conv   weight (out_channels, in_channels, kernel, kernel)
//   deconv weight (in_channels, out_channels, kernel, kernel)
//   bias   (out_channels, 1, 1, 1)
// Padding is zero padding.
struct LayerSpec {
  std::string name;
  LayerKind kind = LayerKind::kConv;
  int in_channels = 0;
  int out_channels = 0;
  int kernel = 1;
  int stride = 1;
  int padding = 0;

  bool HasParameters() const {
    return kind == LayerKind::kConv || kind == LayerKind::kDeconv;
  }
  std::string WeightName() const { return name + ".weight"; }
  std::string BiasName() const { return name + ".bias"; }
  Shape WeightShape() const;
  Shape BiasShape() const { return Shape{out_channels, 1, 1, 1}; }

  // Throws kConfig when the hyper-parameters are invalid. Conv kernels must
  // be odd; deconv kernels may be even (k=4, s=2, p=1 doubles exactly).
  void Validate() const;

  // Spatial output size for an input of (height, width):
  //   conv   floor((in + 2*padding - kernel) / stride) + 1
  //   deconv (in - 1) * stride - 2 * padding + kernel
  // Throws kConfig when either output dimension would be < 1.
  std::pair<int, int> OutputDims(int height, int width) const;

  // Output channel count given `in` channels (pass-through for activations).
  int OutputChannels(int in) const { return HasParameters() ? out_channels : in; }
};

// Accumulation order, identical for every output element: start from the
// bias, then add input channels in ascending order, kernel rows ascending,
// kernel columns ascending, all in float. Out-of-bounds taps are skipped.
Tensor Conv2d(const Tensor& input, const LayerSpec& spec,
              const WeightStore& weights);

// Transposed convolution, evaluated as a gather with the same fixed order
// as Conv2d: bias, then input channels, kernel rows, kernel columns.
Tensor Deconv2d(const Tensor& input, const LayerSpec& spec,
                const WeightStore& weights);

Tensor Relu(const Tensor& input);

// Softmax across channels at every (batch, y, x), max-subtracted.
Tensor ChannelSoftmax(const Tensor& input);

Tensor ApplyLayer(const Tensor& input, const LayerSpec& spec,
                  const WeightStore& weights);
Tensor RunChain(const Tensor& input, std::span<const LayerSpec> chain,
                const WeightStore& weights);

}  // namespace lic

#endif  // LIC_LAYERS_H_
