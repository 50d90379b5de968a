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

#include "lic/layers.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lic/status.h"

namespace lic {
namespace {

[[noreturn]] void ConfigError(const std::string& message) {
  throw Error(ErrorCode::kConfig, message);
}

const Tensor& CheckedParam(const WeightStore& weights, const std::string& name,
                           const Shape& expected) {
  const Tensor& t = weights.Get(name);
  if (!(t.shape() == expected)) {
    ConfigError("shape mismatch for '" + name + "': expected " +
                expected.ToString() + ", got " + t.shape().ToString());
  }
  return t;
}

void CheckInput(const Tensor& input, const LayerSpec& spec) {
  if (input.shape().channels != spec.in_channels) {
    ConfigError("layer '" + spec.name + "' expects " +
                std::to_string(spec.in_channels) + " input channels, got " +
                std::to_string(input.shape().channels));
  }
}

}  // namespace

const char* LayerKindName(LayerKind kind) {
  switch (kind) {
    case LayerKind::kConv:
      return "conv";
    case LayerKind::kDeconv:
      return "deconv";
    case LayerKind::kRelu:
      return "relu";
    case LayerKind::kChannelSoftmax:
      return "channel_softmax";
  }
  return "unknown";
}

LayerKind ParseLayerKind(std::string_view name) {
  if (name == "conv") return LayerKind::kConv;
  if (name == "deconv") return LayerKind::kDeconv;
  if (name == "relu") return LayerKind::kRelu;
  if (name == "channel_softmax") return LayerKind::kChannelSoftmax;
  throw Error(ErrorCode::kMalformed,
              "unknown layer kind '" + std::string(name) + "'");
}

Shape LayerSpec::WeightShape() const {
  if (kind == LayerKind::kDeconv) {
    return Shape{in_channels, out_channels, kernel, kernel};
  }
  return Shape{out_channels, in_channels, kernel, kernel};
}

void LayerSpec::Validate() const {
  if (!HasParameters()) return;
  if (in_channels < 1 || out_channels < 1) {
    ConfigError("layer '" + name + "': channel counts must be >= 1");
  }
  if (kernel < 1 || stride < 1 || padding < 0) {
    ConfigError("layer '" + name + "': invalid kernel/stride/padding");
  }
  if (kind == LayerKind::kConv && kernel % 2 == 0) {
    ConfigError("layer '" + name + "': conv kernel must be odd");
  }
}

std::pair<int, int> LayerSpec::OutputDims(int height, int width) const {
  Validate();
  int oh = height, ow = width;
  if (kind == LayerKind::kConv) {
    const int eh = height + 2 * padding - kernel;
    const int ew = width + 2 * padding - kernel;
    oh = eh < 0 ? 0 : eh / stride + 1;
    ow = ew < 0 ? 0 : ew / stride + 1;
  } else if (kind == LayerKind::kDeconv) {
    oh = (height - 1) * stride - 2 * padding + kernel;
    ow = (width - 1) * stride - 2 * padding + kernel;
  }
  if (oh < 1 || ow < 1) {
    ConfigError("layer '" + name + "': output dims " + std::to_string(oh) +
                "x" + std::to_string(ow) + " for input " +
                std::to_string(height) + "x" + std::to_string(width));
  }
  return {oh, ow};
}

Tensor Conv2d(const Tensor& input, const LayerSpec& spec,
              const WeightStore& weights) {
  if (spec.kind != LayerKind::kConv) {
    ConfigError("layer '" + spec.name + "' is not a conv");
  }
  CheckInput(input, spec);
  const Tensor& w = CheckedParam(weights, spec.WeightName(), spec.WeightShape());
  const Tensor& b = CheckedParam(weights, spec.BiasName(), spec.BiasShape());
  const Shape& is = input.shape();
  const auto [oh, ow] = spec.OutputDims(is.height, is.width);
  Tensor out(Shape{is.batch, spec.out_channels, oh, ow});

  const int k = spec.kernel;
  const std::span<const float> wd = w.data();
  for (int n = 0; n < is.batch; ++n) {
    for (int co = 0; co < spec.out_channels; ++co) {
      const float bias = b.data()[co];
      float* dst = out.Plane(n, co).data();
      for (int oy = 0; oy < oh; ++oy) {
        for (int ox = 0; ox < ow; ++ox) {
          float acc = bias;
          for (int ci = 0; ci < spec.in_channels; ++ci) {
            const float* src = input.Plane(n, ci).data();
            const float* wk =
                wd.data() + (static_cast<size_t>(co) * spec.in_channels + ci) *
                                k * k;
            for (int ky = 0; ky < k; ++ky) {
              const int iy = oy * spec.stride - spec.padding + ky;
              if (iy < 0 || iy >= is.height) continue;
              for (int kx = 0; kx < k; ++kx) {
                const int ix = ox * spec.stride - spec.padding + kx;
                if (ix < 0 || ix >= is.width) continue;
                acc += wk[ky * k + kx] * src[iy * is.width + ix];
              }
            }
          }
          dst[oy * ow + ox] = acc;
        }
      }
    }
  }
  return out;
}

Tensor Deconv2d(const Tensor& input, const LayerSpec& spec,
                const WeightStore& weights) {
  if (spec.kind != LayerKind::kDeconv) {
    ConfigError("layer '" + spec.name + "' is not a deconv");
  }
  CheckInput(input, spec);
  const Tensor& w = CheckedParam(weights, spec.WeightName(), spec.WeightShape());
  const Tensor& b = CheckedParam(weights, spec.BiasName(), spec.BiasShape());
  const Shape& is = input.shape();
  const auto [oh, ow] = spec.OutputDims(is.height, is.width);
  Tensor out(Shape{is.batch, spec.out_channels, oh, ow});

  const int k = spec.kernel;
  const int s = spec.stride;
  const std::span<const float> wd = w.data();
  for (int n = 0; n < is.batch; ++n) {
    for (int co = 0; co < spec.out_channels; ++co) {
      const float bias = b.data()[co];
      float* dst = out.Plane(n, co).data();
      for (int oy = 0; oy < oh; ++oy) {
        for (int ox = 0; ox < ow; ++ox) {
          float acc = bias;
          for (int ci = 0; ci < spec.in_channels; ++ci) {
            const float* src = input.Plane(n, ci).data();
            const float* wk =
                wd.data() +
                (static_cast<size_t>(ci) * spec.out_channels + co) * k * k;
            for (int ky = 0; ky < k; ++ky) {
              const int ty = oy + spec.padding - ky;
              if (ty < 0 || ty % s != 0) continue;
              const int iy = ty / s;
              if (iy >= is.height) continue;
              for (int kx = 0; kx < k; ++kx) {
                const int tx = ox + spec.padding - kx;
                if (tx < 0 || tx % s != 0) continue;
                const int ix = tx / s;
                if (ix >= is.width) continue;
                acc += wk[ky * k + kx] * src[iy * is.width + ix];
              }
            }
          }
          dst[oy * ow + ox] = acc;
        }
      }
    }
  }
  return out;
}

Tensor Relu(const Tensor& input) {
  Tensor out = input;
  for (float& v : out.data()) v = v > 0.0f ? v : 0.0f;
  return out;
}

Tensor ChannelSoftmax(const Tensor& input) {
  const Shape& s = input.shape();
  Tensor out(s);
  const size_t plane = input.PlaneSize();
  std::vector<double> e(s.channels);
  for (int n = 0; n < s.batch; ++n) {
    for (size_t i = 0; i < plane; ++i) {
      float m = input.Plane(n, 0)[i];
      for (int c = 1; c < s.channels; ++c) {
        m = std::max(m, input.Plane(n, c)[i]);
      }
      double sum = 0.0;
      for (int c = 0; c < s.channels; ++c) {
        e[c] = std::exp(static_cast<double>(input.Plane(n, c)[i]) - m);
        sum += e[c];
      }
      for (int c = 0; c < s.channels; ++c) {
        out.Plane(n, c)[i] = static_cast<float>(e[c] / sum);
      }
    }
  }
  return out;
}

Tensor ApplyLayer(const Tensor& input, const LayerSpec& spec,
                  const WeightStore& weights) {
  switch (spec.kind) {
    case LayerKind::kConv:
      return Conv2d(input, spec, weights);
    case LayerKind::kDeconv:
      return Deconv2d(input, spec, weights);
    case LayerKind::kRelu:
      return Relu(input);
    case LayerKind::kChannelSoftmax:
      return ChannelSoftmax(input);
  }
  ConfigError("unknown layer kind");
}

Tensor RunChain(const Tensor& input, std::span<const LayerSpec> chain,
                const WeightStore& weights) {
  Tensor t = input;
  for (const LayerSpec& spec : chain) t = ApplyLayer(t, spec, weights);
  return t;
}

}  // namespace lic
