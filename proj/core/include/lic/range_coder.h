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

#ifndef LIC_RANGE_CODER_H_
#define LIC_RANGE_CODER_H_

#include <stddef.h>
#include <stdint.h>

#include <span>
#include <vector>

#include "lic/gaussian.h"

namespace lic {

// Byte-oriented range coder with a 32-bit range and carry propagation.
//
// Stream layout: the renormalization bytes of the code value, most
// significant first, followed by one flush byte. The flush byte is the top
// byte of the multiple of 2^24 inside the final interval; the decoder reads
// the three bytes after the end of the stream as zeros, so a stream encoding
// symbols with information content I bits is at most floor(I / 8) + 1 bytes
// (plus sub-1e-2 bit per symbol of range truncation loss).
//
// The range stays >= 2^24 after renormalization and tables have
// precision <= 16, so every symbol keeps a non-empty sub-range.
class RangeEncoder {
 public:
  RangeEncoder() = default;

  // Codes the interval [cum, cum + freq) out of 2^precision.
  void Encode(uint32_t cum, uint32_t freq, int precision);

  // Codes `symbol` with `table`. Throws kCoding if the symbol is outside
  // the table; `index` is only used in the error message.
  void EncodeSymbol(int64_t symbol, const FrequencyTable& table,
                    size_t index = 0);

  // Flushes and returns the stream; the encoder must not be reused.
  std::vector<uint8_t> Finish();

 private:
  void ShiftLow();

  uint64_t low_ = 0;
  uint32_t range_ = 0xFFFFFFFFu;
  uint8_t cache_ = 0;
  uint64_t cache_size_ = 1;
  bool first_byte_ = true;
  std::vector<uint8_t> out_;
};

class RangeDecoder {
 public:
  explicit RangeDecoder(std::span<const uint8_t> bytes);

  // Returns the cumulative-frequency target in [0, 2^precision).
  uint32_t Target(int precision) const;
  // Consumes the interval identified from Target().
  void Consume(uint32_t cum, uint32_t freq, int precision);

  int64_t DecodeSymbol(const FrequencyTable& table);

  // Checks that exactly the encoder's bytes were consumed. Throws
  // kTruncated when the decoder ran past the stream, kCoding when stream
  // bytes were left unread.
  void Finish() const;

 private:
  uint8_t NextByte();

  std::span<const uint8_t> bytes_;
  size_t pos_ = 0;
  uint32_t code_ = 0;
  uint32_t range_ = 0xFFFFFFFFu;
};

struct CodedStream {
  std::vector<uint8_t> bytes;
  size_t symbol_count = 0;

  bool operator==(const CodedStream&) const = default;
};

// One table per symbol, in coding order. Throws kConfig on a length mismatch
// and kCoding (with the symbol index) for out-of-range symbols.
CodedStream EncodeSymbols(std::span<const int64_t> symbols,
                          std::span<const FrequencyTable> tables);
// `tables` must be the encoder's tables in the same order.
std::vector<int64_t> DecodeSymbols(const CodedStream& stream,
                                   std::span<const FrequencyTable> tables);

}  // namespace lic

#endif  // LIC_RANGE_CODER_H_
