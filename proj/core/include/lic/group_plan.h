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

#ifndef LIC_GROUP_PLAN_H_
#define LIC_GROUP_PLAN_H_

#include <string>
#include <vector>

namespace lic {

// Uneven split of the latent channels into sequentially coded groups.
// Earlier groups are small and condition the later, larger ones.
class GroupPlan {
 public:
  GroupPlan() = default;
  // Throws kConfig if empty or any size < 1.
  explicit GroupPlan(std::vector<int> sizes);

  // Five groups {M/20, M/20, M/10, M/5, remainder}, each rounded to the
  // nearest integer and at least 1. Throws kConfig if M is too small to
  // leave a remainder >= 1.
  static GroupPlan Default(int latent_channels);

  int num_groups() const { return static_cast<int>(sizes_.size()); }
  int size(int g) const { return sizes_[g]; }
  int offset(int g) const { return offsets_[g]; }
  int total() const { return offsets_.empty() ? 0 : offsets_.back(); }
  const std::vector<int>& sizes() const { return sizes_; }

  // Group containing latent channel `c`.
  int GroupOf(int c) const;

  // Throws kConfig unless the sizes sum to `channels`.
  void CheckMatches(int channels) const;

  std::string ToString() const;
  bool operator==(const GroupPlan& other) const {
    return sizes_ == other.sizes_;
  }

 private:
  std::vector<int> sizes_;
  std::vector<int> offsets_;  // num_groups + 1 prefix sums
};

}  // namespace lic

#endif  // LIC_GROUP_PLAN_H_
