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

#include "lic/quantizer.h"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "lic/status.h"

namespace lic {

QuantizerConstants DeriveConstants(const QuantizerConfig& config) {
  const double bias = config.Bias();
  const std::string which = "group " + std::to_string(config.group_index) +
                            " (bias " + std::to_string(bias) + ")";
  if (!(bias > 0.0)) {
    throw Error(ErrorCode::kInvalidGroup, which + ": bias must be positive");
  }
  if (bias > config.upper_bound || bias > 0.5) {
    throw Error(ErrorCode::kConfig,
                which + ": bias exceeds the upper bound or 0.5");
  }
  QuantizerConstants k;
  k.bias = bias;
  if (bias == 0.5) {
    k.a = std::numeric_limits<double>::quiet_NaN();
    k.c = std::numeric_limits<double>::quiet_NaN();
    k.b = 0.0;
    k.identity = true;
    return k;
  }
  // e^(b/2) is the larger root of bias * t^2 - t + (1 - bias) = 0, which
  // simplifies to (1 - bias) / bias.
  const double exp_half_b =
      (1.0 + std::sqrt(1.0 - 4.0 * bias * (1.0 - bias))) / (2.0 * bias);
  const double exp_b = exp_half_b * exp_half_b;
  k.b = std::log(exp_b);
  const double exp_ab = 1.0 / (exp_b - 1.0);
  k.a = std::log(exp_ab) / k.b;
  k.c = -std::exp(k.a * k.b);
  k.identity = false;
  return k;
}

double WarpValue(double v, const QuantizerConstants& constants) {
  if (constants.identity) return v;
  const double frac = v - std::trunc(v);
  const double whole = v - frac;
  const double sign = frac >= 0.0 ? 1.0 : -1.0;
  const double warped =
      std::exp((std::fabs(frac) + constants.a) * constants.b) + constants.c;
  return whole + sign * warped;
}

double RoundHalfAwayFromZero(double v) { return std::round(v); }

Tensor QuantizeLatent(const Tensor& y, std::span<const int> group_sizes,
                      std::span<const QuantizerConfig> configs) {
  if (group_sizes.size() != configs.size()) {
    throw Error(ErrorCode::kConfig,
                "quantizer plan has " + std::to_string(configs.size()) +
                    " configs for " + std::to_string(group_sizes.size()) +
                    " groups");
  }
  int total = 0;
  for (int s : group_sizes) total += s;
  if (total != y.shape().channels) {
    throw Error(ErrorCode::kConfig,
                "quantizer plan covers " + std::to_string(total) +
                    " channels, latent has " +
                    std::to_string(y.shape().channels));
  }
  std::vector<QuantizerConstants> constants;
  for (const QuantizerConfig& config : configs) {
    constants.push_back(DeriveConstants(config));
  }
  Tensor out(y.shape());
  for (int n = 0; n < y.shape().batch; ++n) {
    int c = 0;
    for (size_t g = 0; g < group_sizes.size(); ++g) {
      for (int i = 0; i < group_sizes[g]; ++i, ++c) {
        std::span<const float> src = y.Plane(n, c);
        std::span<float> dst = out.Plane(n, c);
        for (size_t j = 0; j < src.size(); ++j) {
          dst[j] = static_cast<float>(QuantizeValue(src[j], constants[g]));
        }
      }
    }
  }
  return out;
}

}  // namespace lic
