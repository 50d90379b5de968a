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

#ifndef LIC_WEIGHTS_H_
#define LIC_WEIGHTS_H_

#include <stdint.h>

#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lic/tensor.h"

namespace lic {

// Named parameters, keyed by dot-separated path ("g_a.0.weight").
class WeightStore {
 public:
  // Throws kMalformed on a duplicate name.
  void Add(const std::string& name, Tensor tensor);
  // Throws kConfig naming the missing path.
  // Inserts or replaces.
  void Set(const std::string& name, Tensor tensor);
  const Tensor& Get(std::string_view name) const;
  bool Contains(std::string_view name) const;

  size_t size() const { return entries_.size(); }
  const std::map<std::string, Tensor, std::less<>>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, Tensor, std::less<>> entries_;
};

// Weight file layout:
//
//   "LICW 1\n"
//   repeated records, in name order when written by SerializeWeights():
//     "<name> <rank> <dim_1> ... <dim_rank> <count>\n"
//     <count> little-endian IEEE-754 float32 values
//
// rank is 1..4; shorter shapes are padded with trailing 1s when loaded.
// A zero-length file is a valid, empty store.
WeightStore ParseWeights(std::span<const uint8_t> bytes);
std::vector<uint8_t> SerializeWeights(const WeightStore& store);

WeightStore LoadWeights(const std::filesystem::path& path);
void SaveWeights(const WeightStore& store, const std::filesystem::path& path);

// 64-bit FNV-1a; binds containers to the exact weight file bytes.
uint64_t Fnv1a64(std::span<const uint8_t> bytes);

}  // namespace lic

#endif  // LIC_WEIGHTS_H_
