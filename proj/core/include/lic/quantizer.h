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

#ifndef LIC_QUANTIZER_H_
#define LIC_QUANTIZER_H_

#include <span>

#include "lic/tensor.h"

namespace lic {

// Adaptive exponential quantization.
//
// The fractional part f = v - trunc(v) of a latent is warped by
//
//   f' = sign(f) * (exp((|f| + a) * b) + c)
//
// with constants chosen so that 0 -> 0, 1 -> 1 and 0.5 -> bias, where
// bias = upper_bound - step * k for channel group k. A bias below 0.5 pulls
// fractions toward the truncated integer (a soft deadzone that grows with
// k); the result is then rounded half away from zero.
struct QuantizerConfig {
  double upper_bound = 0.5;
  double step = 0.04;
  int group_index = 0;

  double Bias() const { return upper_bound - step * group_index; }
};

struct QuantizerConstants {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double bias = 0.5;
  // bias == 0.5: b = 0 and a, c diverge; the warp is exactly the identity
  // (the limit as bias -> 0.5). a and c are NaN in this case.
  bool identity = true;
};

// Throws kInvalidGroup when bias <= 0, kConfig when bias > upper_bound or
// bias > 0.5.
QuantizerConstants DeriveConstants(const QuantizerConfig& config);

double WarpValue(double v, const QuantizerConstants& constants);

double RoundHalfAwayFromZero(double v);

// Warp followed by round-half-away-from-zero.
inline double QuantizeValue(double v, const QuantizerConstants& constants) {
  return RoundHalfAwayFromZero(WarpValue(v, constants));
}

// Quantizes every channel of `y` with the constants of its group; group g
// covers the next group_sizes[g] channels and uses configs[g]. Throws
// kConfig when the sizes do not sum to the channel count or the two lists
// differ in length.
Tensor QuantizeLatent(const Tensor& y, std::span<const int> group_sizes,
                      std::span<const QuantizerConfig> configs);

}  // namespace lic

#endif  // LIC_QUANTIZER_H_
