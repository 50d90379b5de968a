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

#ifndef LIC_CONTEXT_H_
#define LIC_CONTEXT_H_

#include <stddef.h>

#include <span>
#include <vector>

#include "lic/architecture.h"
#include "lic/gaussian.h"
#include "lic/group_plan.h"
#include "lic/tensor.h"
#include "lic/weights.h"

namespace lic {

// Checkerboard phase: anchors are positions with (y + x) even and are coded
// before the non-anchors of the same channel group.
enum class Phase { kAnchor, kNonAnchor };

inline bool IsAnchor(int y, int x) { return ((y + x) & 1) == 0; }

struct CheckerboardMask {
  Phase phase = Phase::kAnchor;

  bool Contains(int y, int x) const {
    return IsAnchor(y, x) == (phase == Phase::kAnchor);
  }
  // Positions of this phase in a height x width grid.
  int Count(int height, int width) const;
};

// One step of the coding order: the channels of one group restricted to one
// checkerboard phase.
struct CodingUnit {
  int index = 0;
  int group = 0;
  Phase phase = Phase::kAnchor;
  int channel_begin = 0;
  int channel_end = 0;

  CheckerboardMask mask() const { return CheckerboardMask{phase}; }
  bool Contains(int c, int y, int x) const {
    return c >= channel_begin && c < channel_end && mask().Contains(y, x);
  }
};

// Units in coding order: group 0 anchor, group 0 non-anchor, group 1 anchor,
// ... Always 2 * num_groups units, including phases that are empty on tiny
// grids.
std::vector<CodingUnit> Schedule(const GroupPlan& plan);

// Flat indices (batch 0) of the unit's elements in `latent`, channel-major
// then raster order. This is also the order in which symbols are coded.
std::vector<size_t> UnitElements(const CodingUnit& unit, const Shape& latent);

// h_a followed by plain rounding (hyper latents are not warped).
Tensor HyperAnalyze(const Tensor& y, const Architecture& arch,
                    const WeightStore& weights);

// h_s: hyper latent -> p with 2M channels at the latent resolution.
Tensor HyperSynthesize(const Tensor& z_hat, const Architecture& arch,
                       const WeightStore& weights);

// Channel attention block: a same-size conv feature path multiplied
// elementwise by channel-softmax attention weights computed from the input
// by 1x1 conv, ReLU, 1x1 conv. Output shape equals input shape.
Tensor ChannAttenBlock(const Tensor& features, const LayerSpec& branch,
                       std::span<const LayerSpec> attention,
                       const WeightStore& weights);
// Same, using ctx.g<group>.branch and ctx.g<group>.attn.* from `arch`.
Tensor ChannAttenBlock(const Tensor& features, const Architecture& arch,
                       const WeightStore& weights, int group);

// Decoded-so-far latent symbols plus the number of finished units.
class LatentState {
 public:
  LatentState(const Shape& latent, std::vector<CodingUnit> schedule);

  const Tensor& symbols() const { return symbols_; }
  Tensor& symbols() { return symbols_; }
  const std::vector<CodingUnit>& schedule() const { return schedule_; }
  int completed() const { return completed_; }

  // Marks `unit` finished; it must be the next unit of the schedule.
  void Complete(const CodingUnit& unit);

 private:
  Tensor symbols_;
  std::vector<CodingUnit> schedule_;
  int completed_ = 0;
};

// Gaussian parameters for the elements of one unit, in UnitElements order.
struct UnitParams {
  std::vector<size_t> indices;
  std::vector<float> mu;
  std::vector<float> sigma;
};

// Entropy-parameter network for every coding unit. For group g the network
// input is
//   [p, symbols of groups < g, anchors of group g (non-anchor phase only)]
// so a unit only ever sees units that precede it in the schedule. The head
// output splits evenly: the first size(g) channels are mu, the rest are
// log sigma (sigma = exp).
class ContextModel {
 public:
  ContextModel(const Architecture& arch, const WeightStore& weights, Tensor p);

  const Tensor& hyper_features() const { return p_; }

  // Throws kScheduling unless every unit before `unit` is complete.
  Tensor ContextInput(const LatentState& state, const CodingUnit& unit) const;
  UnitParams EntropyParameters(const LatentState& state,
                               const CodingUnit& unit) const;

 private:
  const Architecture& arch_;
  const WeightStore& weights_;
  Tensor p_;
};

}  // namespace lic

#endif  // LIC_CONTEXT_H_
