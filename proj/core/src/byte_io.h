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

#ifndef LIC_SRC_BYTE_IO_H_
#define LIC_SRC_BYTE_IO_H_

#include <stddef.h>
#include <stdint.h>
#include <string.h>

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "lic/status.h"

namespace lic {

std::vector<uint8_t> ReadFileBytes(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path,
                    std::span<const uint8_t> bytes);
std::string ReadFileText(const std::filesystem::path& path);

inline void AppendU8(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v));
}

inline void AppendLE(std::vector<uint8_t>& out, uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

// Unsigned LEB128.
inline void AppendVarint(std::vector<uint8_t>& out, uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<uint8_t>(v | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<uint8_t>(v));
}

inline uint32_t FloatBits(float f) {
  uint32_t u;
  memcpy(&u, &f, sizeof(u));
  return u;
}

inline float BitsToFloat(uint32_t u) {
  float f;
  memcpy(&f, &u, sizeof(f));
  return f;
}

// Bounds-checked little-endian reader. Reading past the end throws `eof_code`.
class ByteReader {
 public:
  ByteReader(std::span<const uint8_t> bytes, ErrorCode eof_code)
      : bytes_(bytes), eof_code_(eof_code) {}

  size_t position() const { return pos_; }
  size_t remaining() const { return bytes_.size() - pos_; }

  uint64_t ReadLE(int bytes) {
    Need(bytes);
    uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) {
      v |= static_cast<uint64_t>(bytes_[pos_ + i]) << (8 * i);
    }
    pos_ += bytes;
    return v;
  }

  uint64_t ReadVarint() {
    uint64_t v = 0;
    for (int shift = 0; shift < 64; shift += 7) {
      Need(1);
      const uint8_t b = bytes_[pos_++];
      v |= static_cast<uint64_t>(b & 0x7F) << shift;
      if ((b & 0x80) == 0) return v;
    }
    throw Error(ErrorCode::kBadContainer, "varint longer than 64 bits");
  }

  std::span<const uint8_t> ReadBytes(size_t n) {
    Need(n);
    std::span<const uint8_t> out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

 private:
  void Need(size_t n) const {
    if (n > remaining()) {
      throw Error(eof_code_, "unexpected end of data at offset " +
                                 std::to_string(pos_));
    }
  }

  std::span<const uint8_t> bytes_;
  ErrorCode eof_code_;
  size_t pos_ = 0;
};

}  // namespace lic

#endif  // LIC_SRC_BYTE_IO_H_
