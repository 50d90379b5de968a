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

#include "lic/context.h"

#include <cmath>
#include <string>
#include <utility>

#include "lic/layers.h"
#include "lic/quantizer.h"
#include "lic/status.h"

namespace lic {

int CheckerboardMask::Count(int height, int width) const {
  const int anchors = (height * width + 1) / 2;
  return phase == Phase::kAnchor ? anchors : height * width - anchors;
}

std::vector<CodingUnit> Schedule(const GroupPlan& plan) {
  std::vector<CodingUnit> units;
  for (int g = 0; g < plan.num_groups(); ++g) {
    for (Phase phase : {Phase::kAnchor, Phase::kNonAnchor}) {
      CodingUnit unit;
      unit.index = static_cast<int>(units.size());
      unit.group = g;
      unit.phase = phase;
      unit.channel_begin = plan.offset(g);
      unit.channel_end = plan.offset(g) + plan.size(g);
      units.push_back(unit);
    }
  }
  return units;
}

std::vector<size_t> UnitElements(const CodingUnit& unit, const Shape& latent) {
  std::vector<size_t> out;
  const CheckerboardMask mask = unit.mask();
  for (int c = unit.channel_begin; c < unit.channel_end; ++c) {
    for (int y = 0; y < latent.height; ++y) {
      for (int x = 0; x < latent.width; ++x) {
        if (mask.Contains(y, x)) {
          out.push_back((static_cast<size_t>(c) * latent.height + y) *
                            latent.width +
                        x);
        }
      }
    }
  }
  return out;
}

Tensor HyperAnalyze(const Tensor& y, const Architecture& arch,
                    const WeightStore& weights) {
  if (y.shape().channels != arch.latent_channels) {
    throw Error(ErrorCode::kConfig,
                "hyper analysis expects " +
                    std::to_string(arch.latent_channels) +
                    " latent channels, got " + y.shape().ToString());
  }
  Tensor z = RunChain(y, arch.Chain("h_a"), weights);
  // Adding +0 turns -0 into +0 so the symbols match the decoder bitwise.
  for (float& v : z.data()) {
    v = std::isnan(v) ? 0.0f : static_cast<float>(RoundHalfAwayFromZero(v)) + 0.0f;
  }
  return z;
}

Tensor HyperSynthesize(const Tensor& z_hat, const Architecture& arch,
                       const WeightStore& weights) {
  if (z_hat.shape().channels != arch.hyper_channels) {
    throw Error(ErrorCode::kConfig,
                "hyper synthesis expects " +
                    std::to_string(arch.hyper_channels) +
                    " channels, got " + z_hat.shape().ToString());
  }
  return RunChain(z_hat, arch.Chain("h_s"), weights);
}

Tensor ChannAttenBlock(const Tensor& features, const LayerSpec& branch,
                       std::span<const LayerSpec> attention,
                       const WeightStore& weights) {
  const Tensor feature_path = Conv2d(features, branch, weights);
  const Tensor attn = RunChain(features, attention, weights);
  if (!(attn.shape() == feature_path.shape()) ||
      !(feature_path.shape() == features.shape())) {
    throw Error(ErrorCode::kConfig, "'" + branch.name +
                                        "': attention block must preserve "
                                        "the input shape");
  }
  Tensor out(features.shape());
  const auto a = attn.data();
  const auto f = feature_path.data();
  auto o = out.data();
  for (size_t i = 0; i < o.size(); ++i) o[i] = f[i] * a[i];
  return out;
}

Tensor ChannAttenBlock(const Tensor& features, const Architecture& arch,
                       const WeightStore& weights, int group) {
  const std::string prefix = "ctx.g" + std::to_string(group);
  return ChannAttenBlock(features, arch.Layer(prefix + ".branch"),
                         arch.Chain(prefix + ".attn"), weights);
}

LatentState::LatentState(const Shape& latent, std::vector<CodingUnit> schedule)
    : symbols_(latent), schedule_(std::move(schedule)) {}

void LatentState::Complete(const CodingUnit& unit) {
  if (unit.index != completed_) {
    throw Error(ErrorCode::kScheduling,
                "unit " + std::to_string(unit.index) +
                    " completed out of order; next is " +
                    std::to_string(completed_));
  }
  ++completed_;
}

ContextModel::ContextModel(const Architecture& arch, const WeightStore& weights,
                           Tensor p)
    : arch_(arch), weights_(weights), p_(std::move(p)) {
  if (p_.shape().channels != 2 * arch_.latent_channels) {
    throw Error(ErrorCode::kConfig,
                "hyper features need " +
                    std::to_string(2 * arch_.latent_channels) +
                    " channels, got " + p_.shape().ToString());
  }
}

Tensor ContextModel::ContextInput(const LatentState& state,
                                  const CodingUnit& unit) const {
  if (state.completed() < unit.index) {
    throw Error(ErrorCode::kScheduling,
                "context for unit " + std::to_string(unit.index) +
                    " requested after only " +
                    std::to_string(state.completed()) + " units");
  }
  const Tensor& symbols = state.symbols();
  const Shape& ls = symbols.shape();
  if (ls.height != p_.shape().height || ls.width != p_.shape().width) {
    throw Error(ErrorCode::kConfig, "latent " + ls.ToString() +
                                        " does not match hyper features " +
                                        p_.shape().ToString());
  }
  const int g = unit.group;
  const int offset = arch_.groups.offset(g);
  const int size = arch_.groups.size(g);
  Tensor input(Shape{1, arch_.ContextInputChannels(g), ls.height, ls.width});
  int c_out = 0;
  for (int c = 0; c < p_.shape().channels; ++c, ++c_out) {
    const auto src = p_.Plane(0, c);
    std::copy(src.begin(), src.end(), input.Plane(0, c_out).begin());
  }
  for (int c = 0; c < offset; ++c, ++c_out) {
    const auto src = symbols.Plane(0, c);
    std::copy(src.begin(), src.end(), input.Plane(0, c_out).begin());
  }
  if (unit.phase == Phase::kNonAnchor) {
    for (int c = offset; c < offset + size; ++c, ++c_out) {
      const auto src = symbols.Plane(0, c);
      auto dst = input.Plane(0, c_out);
      for (int y = 0; y < ls.height; ++y) {
        for (int x = 0; x < ls.width; ++x) {
          if (IsAnchor(y, x)) dst[y * ls.width + x] = src[y * ls.width + x];
        }
      }
    }
  }
  return input;
}

UnitParams ContextModel::EntropyParameters(const LatentState& state,
                                           const CodingUnit& unit) const {
  const Tensor input = ContextInput(state, unit);
  const std::string prefix = "ctx.g" + std::to_string(unit.group);
  const Tensor attended = ChannAttenBlock(input, arch_, weights_, unit.group);
  const Tensor out = RunChain(attended, arch_.Chain(prefix + ".head"), weights_);
  const int size = arch_.groups.size(unit.group);
  if (out.shape().channels != 2 * size) {
    throw Error(ErrorCode::kConfig, "'" + prefix + ".head' must produce " +
                                        std::to_string(2 * size) + " channels");
  }
  const Shape& ls = state.symbols().shape();
  UnitParams params;
  params.indices = UnitElements(unit, ls);
  params.mu.reserve(params.indices.size());
  params.sigma.reserve(params.indices.size());
  const size_t plane = state.symbols().PlaneSize();
  for (size_t index : params.indices) {
    const int c = static_cast<int>(index / plane) - unit.channel_begin;
    const size_t pos = index % plane;
    params.mu.push_back(out.Plane(0, c)[pos]);
    params.sigma.push_back(std::exp(out.Plane(0, size + c)[pos]));
  }
  return params;
}

}  // namespace lic
