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

#include "lic/weights.h"

#include <stdlib.h>

#include <sstream>
#include <utility>

#include "byte_io.h"
#include "lic/status.h"

namespace lic {
namespace {

constexpr std::string_view kMagicLine = "LICW 1";
constexpr size_t kMaxHeaderLine = 4096;

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformed, "weight file: " + what);
}

// Reads one '\n'-terminated line starting at `pos`.
std::string ReadLine(std::span<const uint8_t> bytes, size_t& pos) {
  std::string line;
  while (pos < bytes.size() && bytes[pos] != '\n') {
    if (line.size() >= kMaxHeaderLine) Malformed("header line too long");
    line.push_back(static_cast<char>(bytes[pos++]));
  }
  if (pos >= bytes.size()) Malformed("unterminated header line '" + line + "'");
  ++pos;  // '\n'
  return line;
}

long ParseCount(const std::string& token, const std::string& name) {
  char* end = nullptr;
  const long v = strtol(token.c_str(), &end, 10);
  if (token.empty() || *end != '\0' || v < 1) {
    Malformed("bad integer '" + token + "' in record '" + name + "'");
  }
  return v;
}

}  // namespace

void WeightStore::Add(const std::string& name, Tensor tensor) {
  if (name.empty() || name.find_first_of(" \t\n") != std::string::npos) {
    Malformed("invalid parameter name '" + name + "'");
  }
  if (!entries_.emplace(name, std::move(tensor)).second) {
    Malformed("duplicate parameter '" + name + "'");
  }
}

void WeightStore::Set(const std::string& name, Tensor tensor) {
  auto it = entries_.find(name);
  if (it == entries_.end()) {
    Add(name, std::move(tensor));
  } else {
    it->second = std::move(tensor);
  }
}

const Tensor& WeightStore::Get(std::string_view name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) {
    throw Error(ErrorCode::kConfig,
                "missing parameter '" + std::string(name) + "'");
  }
  return it->second;
}

bool WeightStore::Contains(std::string_view name) const {
  return entries_.find(name) != entries_.end();
}

WeightStore ParseWeights(std::span<const uint8_t> bytes) {
  WeightStore store;
  if (bytes.empty()) return store;
  size_t pos = 0;
  if (ReadLine(bytes, pos) != kMagicLine) Malformed("bad magic line");
  while (pos < bytes.size()) {
    std::istringstream fields(ReadLine(bytes, pos));
    std::string name, token;
    fields >> name;
    if (name.empty()) Malformed("empty record header");
    std::vector<std::string> tokens;
    while (fields >> token) tokens.push_back(token);
    if (tokens.empty()) Malformed("record '" + name + "' has no rank");
    const long rank = ParseCount(tokens[0], name);
    if (rank > 4) Malformed("record '" + name + "' has rank > 4");
    if (tokens.size() != static_cast<size_t>(rank) + 2) {
      Malformed("record '" + name + "' expects " + std::to_string(rank) +
                " dims and a count");
    }
    int dims[4] = {1, 1, 1, 1};
    size_t product = 1;
    for (long i = 0; i < rank; ++i) {
      dims[i] = static_cast<int>(ParseCount(tokens[1 + i], name));
      product *= static_cast<size_t>(dims[i]);
    }
    const size_t count = static_cast<size_t>(ParseCount(tokens.back(), name));
    if (count != product) {
      Malformed("length mismatch for '" + name + "': shape product " +
                std::to_string(product) + " but " + std::to_string(count) +
                " values declared");
    }
    if (bytes.size() - pos < count * 4) {
      Malformed("payload of '" + name + "' is truncated");
    }
    std::vector<float> values(count);
    for (size_t i = 0; i < count; ++i, pos += 4) {
      const uint32_t u = static_cast<uint32_t>(bytes[pos]) |
                         (static_cast<uint32_t>(bytes[pos + 1]) << 8) |
                         (static_cast<uint32_t>(bytes[pos + 2]) << 16) |
                         (static_cast<uint32_t>(bytes[pos + 3]) << 24);
      values[i] = BitsToFloat(u);
    }
    store.Add(name, Tensor(Shape{dims[0], dims[1], dims[2], dims[3]},
                           std::move(values)));
  }
  return store;
}

std::vector<uint8_t> SerializeWeights(const WeightStore& store) {
  std::vector<uint8_t> out;
  auto append_text = [&out](const std::string& s) {
    out.insert(out.end(), s.begin(), s.end());
  };
  append_text(std::string(kMagicLine) + "\n");
  for (const auto& [name, tensor] : store.entries()) {
    const Shape& s = tensor.shape();
    append_text(name + " 4 " + std::to_string(s.batch) + " " +
                std::to_string(s.channels) + " " + std::to_string(s.height) +
                " " + std::to_string(s.width) + " " +
                std::to_string(tensor.size()) + "\n");
    for (float v : tensor.data()) AppendLE(out, FloatBits(v), 4);
  }
  return out;
}

WeightStore LoadWeights(const std::filesystem::path& path) {
  return ParseWeights(ReadFileBytes(path));
}

void SaveWeights(const WeightStore& store, const std::filesystem::path& path) {
  WriteFileBytes(path, SerializeWeights(store));
}

uint64_t Fnv1a64(std::span<const uint8_t> bytes) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace lic
