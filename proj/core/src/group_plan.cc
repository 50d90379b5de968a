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

#include "lic/group_plan.h"

#include <cmath>

#include "lic/status.h"

namespace lic {

GroupPlan::GroupPlan(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) throw Error(ErrorCode::kConfig, "group plan is empty");
  offsets_.assign(1, 0);
  for (int s : sizes_) {
    if (s < 1) {
      throw Error(ErrorCode::kConfig, "group sizes must be >= 1");
    }
    offsets_.push_back(offsets_.back() + s);
  }
}

GroupPlan GroupPlan::Default(int latent_channels) {
  constexpr double kFractions[] = {0.05, 0.05, 0.1, 0.2};
  std::vector<int> sizes;
  int used = 0;
  for (double f : kFractions) {
    const int s = std::max(1, static_cast<int>(std::lround(latent_channels * f)));
    sizes.push_back(s);
    used += s;
  }
  if (latent_channels - used < 1) {
    throw Error(ErrorCode::kConfig,
                "latent_channels=" + std::to_string(latent_channels) +
                    " is too small for the default five-group split");
  }
  sizes.push_back(latent_channels - used);
  return GroupPlan(std::move(sizes));
}

int GroupPlan::GroupOf(int c) const {
  for (int g = 0; g < num_groups(); ++g) {
    if (c < offsets_[g + 1]) return g;
  }
  throw Error(ErrorCode::kConfig, "channel " + std::to_string(c) +
                                      " outside group plan " + ToString());
}

void GroupPlan::CheckMatches(int channels) const {
  if (total() != channels) {
    throw Error(ErrorCode::kConfig, "group plan " + ToString() + " sums to " +
                                        std::to_string(total()) + ", expected " +
                                        std::to_string(channels) + " channels");
  }
}

std::string GroupPlan::ToString() const {
  std::string s;
  for (size_t i = 0; i < sizes_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(sizes_[i]);
  }
  return s;
}

}  // namespace lic
