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

#ifndef LIC_TOY_MODEL_H_
#define LIC_TOY_MODEL_H_

#include <stdint.h>

#include <array>
#include <filesystem>
#include <vector>

#include "lic/architecture.h"
#include "lic/weights.h"

namespace lic {

// Rate-distortion trade-offs of the reference model family.
inline constexpr std::array<double, 5> kReferenceLambdas = {0.002, 0.004,
                                                            0.008, 0.020,
                                                            0.035};

// Small architecture with the full module layout (g_a, g_s, h_a, h_s and
// one context network per channel group). Total downsampling is 64.
struct ToyConfig {
  int main_channels = 32;
  int latent_channels = 40;
  int hyper_hidden = 32;
  int hyper_channels = 4;
  int attention_hidden = 16;
  int head_hidden = 32;
  std::vector<int> groups;  // empty: GroupPlan::Default
  uint64_t seed = 2026;
};

Architecture MakeToyArchitecture(const ToyConfig& config);

// Deterministic synthetic weights. The weights are not trained; they are
// calibrated so that y on uniform-noise input has RMS `latent_scale`, the
// predicted sigma matches that scale, and constant images land near zero.
WeightStore MakeToyWeights(const Architecture& arch, uint64_t seed,
                           double latent_scale);

// Latent RMS used for the model of `lambda`; grows with the square root of
// lambda so that higher lambda models spend more bits.
double ToyLatentScale(double lambda);

// Writes arch.txt, lambdas.txt and lambda_<i>.lw for every entry of
// `lambdas`.
void WriteToyModelDir(const std::filesystem::path& dir,
                      const ToyConfig& config,
                      const std::vector<double>& lambdas =
                          std::vector<double>(kReferenceLambdas.begin(),
                                              kReferenceLambdas.end()));

}  // namespace lic

#endif  // LIC_TOY_MODEL_H_
