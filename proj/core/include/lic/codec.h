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

#ifndef LIC_CODEC_H_
#define LIC_CODEC_H_

#include <stddef.h>
#include <stdint.h>

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "lic/architecture.h"
#include "lic/context.h"
#include "lic/gaussian.h"
#include "lic/image.h"
#include "lic/tensor.h"
#include "lic/weights.h"

namespace lic {

// One trained (or synthetic) operating point: architecture plus the weights
// for a single lambda. `hash` binds bitstreams to the exact weight bytes.
struct Model {
  Architecture arch;
  WeightStore weights;
  uint64_t hash = 0;
  int lambda_index = 0;
  double lambda = 0.0;
};

// Checks that every parametric layer finds weights of the right shape.
void CheckWeights(const Architecture& arch, const WeightStore& weights);

// Hash is taken over SerializeWeights(weights).
Model MakeModel(Architecture arch, WeightStore weights, int lambda_index,
                double lambda);

struct ModelEntry {
  int index = 0;
  double lambda = 0.0;
  std::string weights_file;
};

// Reads <dir>/lambdas.txt: lines "index=<i> lambda=<x> weights=<file>".
std::vector<ModelEntry> ReadModelIndex(const std::filesystem::path& dir);

// Loads <dir>/arch.txt and the weights registered for `lambda_index`.
Model LoadModel(const std::filesystem::path& dir, int lambda_index);

struct CodecOptions {
  double upper_bound = 0.5;
  double step = 0.04;
  GaussianCoderConfig coder;
};

inline constexpr int kContainerVersion = 1;

// Serialized layout, all integers little-endian, varint = unsigned LEB128:
//   "LICB" | u8 version | varint width | varint height | u64 model hash |
//   u8 lambda index | u8 group count | varint size per group |
//   u16 upper_bound * 1e4 | u16 step * 1e4 | u8 precision | u8 scale table |
//   u8 hyper channels | u8 sigma index per hyper channel |
//   varint hyper stream length | varint length per coding unit |
//   u32 symbol-plane CRC-32 | hyper stream | unit streams in schedule order |
//   u32 CRC-32 of all preceding bytes.
// The symbol-plane CRC covers z_hat then y_hat as little-endian int32 in
// tensor order; it catches decoding with tables that differ from the
// encoder's.
struct Container {
  int version = kContainerVersion;
  uint32_t width = 0;
  uint32_t height = 0;
  uint64_t model_hash = 0;
  int lambda_index = 0;
  std::vector<int> group_sizes;
  uint16_t upper_bound_e4 = 5000;
  uint16_t step_e4 = 400;
  int precision = 16;
  int scale_table_id = 0;
  std::vector<uint8_t> hyper_sigma;
  uint32_t symbol_crc = 0;
  std::vector<uint8_t> hyper_stream;
  std::vector<std::vector<uint8_t>> unit_streams;

  size_t PayloadBytes() const;
  bool operator==(const Container&) const = default;
};

std::vector<uint8_t> SerializeContainer(const Container& c);
// Errors: kBadContainer (magic, field ranges, trailing bytes),
// kUnsupportedVersion, kTruncated (declared lengths exceed the data),
// kChecksum.
Container ParseContainer(std::span<const uint8_t> bytes);
// CRC-32 of z_hat followed by y_hat as little-endian int32.
uint32_t SymbolPlaneCrc(const Tensor& z_hat, const Tensor& y_hat);

struct EncodeResult {
  Container container;
  std::vector<uint8_t> bytes;
  Tensor y_hat;
  Tensor z_hat;
  std::vector<UnitParams> unit_params;
  Image reconstruction;  // g_s(y_hat), identical to what the decoder emits
  double latent_bits = 0.0;  // model estimate for y_hat
  double hyper_bits = 0.0;   // model estimate for z_hat
  double bpp = 0.0;          // whole container
  double payload_bpp = 0.0;  // entropy-coded streams only

  double rate_bits() const { return latent_bits + hyper_bits; }
};

EncodeResult EncodeImage(const Image& image, const Model& model,
                         const CodecOptions& options = {});

struct DecodeResult {
  Image image;
  Tensor y_hat;
  Tensor z_hat;
  std::vector<UnitParams> unit_params;
};

// Fails with kModelMismatch before any entropy decoding when the container
// was produced by different weights, lambda or grouping, and with kChecksum
// when the decoded symbols do not match the symbol-plane CRC.
DecodeResult DecodeImage(std::span<const uint8_t> bytes, const Model& model);

}  // namespace lic

#endif  // LIC_CODEC_H_
