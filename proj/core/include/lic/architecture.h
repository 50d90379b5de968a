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

#ifndef LIC_ARCHITECTURE_H_
#define LIC_ARCHITECTURE_H_

#include <stdint.h>

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lic/group_plan.h"
#include "lic/layers.h"

namespace lic {

// Network description. Layers are grouped into modules by name prefix:
//
//   g_a.*          analysis transform, image (3 ch) -> latent (M ch)
//   g_s.*          synthesis transform, latent -> image
//   h_a.*          hyper analysis, latent -> hyper latent (hyper_channels)
//   h_s.*          hyper synthesis, hyper latent -> p (2M ch)
//   ctx.g<k>.*     entropy-parameter network of channel group k:
//     ctx.g<k>.branch   5x5 conv, c_in -> c_in (feature path)
//     ctx.g<k>.attn.*   1x1 conv, relu, 1x1 conv, channel_softmax
//     ctx.g<k>.head.*   chain ending in 2 * group_size channels
//   with c_in = 2M + offset(k) + size(k).
//
// Modules run their layers in file order.
struct Architecture {
  int image_channels = 3;
  int latent_channels = 0;
  int hyper_channels = 0;
  GroupPlan groups;
  std::vector<LayerSpec> layers;

  // Layers whose name starts with `prefix` followed by '.'.
  std::vector<LayerSpec> Chain(std::string_view prefix) const;
  const LayerSpec& Layer(std::string_view name) const;

  // Product of the strides of g_a and h_a conv layers: image dims must be a
  // multiple of this so every latent grid is whole.
  int DownsamplingFactor() const;

  // Context-network input width for group g.
  int ContextInputChannels(int g) const {
    return 2 * latent_channels + groups.offset(g) + groups.size(g);
  }

  // Checks every module's channel chain and the context block wiring.
  // Throws kConfig naming the offending layer.
  void Validate() const;
};

// Flat key-value text, one entry per line, '#' starts a comment:
//
//   latent_channels=40
//   hyper_channels=4
//   groups=2,2,4,8,24              (optional; default split otherwise)
//   layer name=g_a.0 kind=conv in=3 out=32 kernel=5 stride=2 padding=2
//   layer name=g_a.1 kind=relu
Architecture ParseArchitecture(std::string_view text);
std::string FormatArchitecture(const Architecture& arch);
Architecture LoadArchitecture(const std::filesystem::path& path);
void SaveArchitecture(const Architecture& arch,
                      const std::filesystem::path& path);

// Multiply-accumulate counts per module.
struct FlopsReport {
  uint64_t g_a = 0;
  uint64_t g_s = 0;
  uint64_t h_a = 0;
  uint64_t h_s = 0;
  uint64_t ctx = 0;

  uint64_t Total() const { return g_a + g_s + h_a + h_s + ctx; }
  // (h_a + h_s + ctx) / total.
  double HyperContextRatio() const;
};

struct ChainCost {
  uint64_t macs = 0;
  int channels = 0;
  int height = 0;
  int width = 0;
};

// MACs of one sequential chain. conv: out_h*out_w*c_in*c_out*k*k;
// deconv: in_h*in_w*c_in*c_out*k*k; activations are free. `channels` = 0
// takes the first parametrized layer's input width. Throws kConfig if the
// chain is not channel-consistent.
ChainCost EstimateChain(std::span<const LayerSpec> chain, int channels,
                        int height, int width);

// Per-module MACs for an image of (height, width). g_s, h_a and ctx run at
// the g_a output resolution, h_s at the h_a output resolution; each context
// group network is counted once (one full-resolution pass).
FlopsReport EstimateFlops(std::span<const LayerSpec> layers, int height,
                          int width);

}  // namespace lic

#endif  // LIC_ARCHITECTURE_H_
