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

#include "lic/range_coder.h"

#include <string>

#include "lic/status.h"

namespace lic {
namespace {

constexpr uint32_t kTop = 1u << 24;
// The decoder may read this many implicit zero bytes past the end.
constexpr size_t kImplicitTail = 3;

}  // namespace

void RangeEncoder::ShiftLow() {
  if (static_cast<uint32_t>(low_) < 0xFF000000u || (low_ >> 32) != 0) {
    const uint8_t carry = static_cast<uint8_t>(low_ >> 32);
    uint8_t pending = cache_;
    do {
      // The first byte only ever holds the initial zero cache; the code
      // value is below 1.0, so no carry can reach it.
      if (first_byte_) {
        first_byte_ = false;
      } else {
        out_.push_back(static_cast<uint8_t>(pending + carry));
      }
      pending = 0xFF;
    } while (--cache_size_ != 0);
    cache_ = static_cast<uint8_t>(low_ >> 24);
  }
  ++cache_size_;
  low_ = (low_ & 0x00FFFFFFu) << 8;
}

void RangeEncoder::Encode(uint32_t cum, uint32_t freq, int precision) {
  const uint32_t r = range_ >> precision;
  low_ += static_cast<uint64_t>(r) * cum;
  range_ = r * freq;
  while (range_ < kTop) {
    range_ <<= 8;
    ShiftLow();
  }
}

void RangeEncoder::EncodeSymbol(int64_t symbol, const FrequencyTable& table,
                                size_t index) {
  if (!table.Contains(symbol)) {
    throw Error(ErrorCode::kCoding,
                "symbol " + std::to_string(symbol) + " at index " +
                    std::to_string(index) + " outside table range [" +
                    std::to_string(table.min_symbol) + ", " +
                    std::to_string(table.max_symbol()) + "]");
  }
  const size_t i = static_cast<size_t>(symbol - table.min_symbol);
  Encode(table.cdf[i], table.freq[i], table.precision);
}

std::vector<uint8_t> RangeEncoder::Finish() {
  // Round low up to a multiple of 2^24; it stays inside [low, low + range)
  // because range >= 2^24.
  low_ = (low_ + (kTop - 1)) & ~static_cast<uint64_t>(kTop - 1);
  ShiftLow();
  ShiftLow();
  return std::move(out_);
}

RangeDecoder::RangeDecoder(std::span<const uint8_t> bytes) : bytes_(bytes) {
  for (int i = 0; i < 4; ++i) code_ = (code_ << 8) | NextByte();
}

uint8_t RangeDecoder::NextByte() {
  if (pos_ >= bytes_.size() + kImplicitTail) {
    throw Error(ErrorCode::kTruncated,
                "range decoder ran past the end of a " +
                    std::to_string(bytes_.size()) + "-byte stream");
  }
  const uint8_t b = pos_ < bytes_.size() ? bytes_[pos_] : 0;
  ++pos_;
  return b;
}

uint32_t RangeDecoder::Target(int precision) const {
  const uint32_t r = range_ >> precision;
  const uint32_t v = code_ / r;
  const uint32_t last = (1u << precision) - 1;
  return v < last ? v : last;
}

void RangeDecoder::Consume(uint32_t cum, uint32_t freq, int precision) {
  const uint32_t r = range_ >> precision;
  code_ -= r * cum;
  range_ = r * freq;
  while (range_ < kTop) {
    range_ <<= 8;
    code_ = (code_ << 8) | NextByte();
  }
}

int64_t RangeDecoder::DecodeSymbol(const FrequencyTable& table) {
  const uint32_t target = Target(table.precision);
  const int64_t symbol = table.Lookup(target);
  const size_t i = static_cast<size_t>(symbol - table.min_symbol);
  Consume(table.cdf[i], table.freq[i], table.precision);
  return symbol;
}

void RangeDecoder::Finish() const {
  if (pos_ != bytes_.size() + kImplicitTail) {
    throw Error(ErrorCode::kCoding,
                "range decoder consumed " + std::to_string(pos_) +
                    " positions of a " + std::to_string(bytes_.size()) +
                    "-byte stream; stream and tables disagree");
  }
}

CodedStream EncodeSymbols(std::span<const int64_t> symbols,
                          std::span<const FrequencyTable> tables) {
  if (symbols.size() != tables.size()) {
    throw Error(ErrorCode::kConfig,
                std::to_string(symbols.size()) + " symbols but " +
                    std::to_string(tables.size()) + " tables");
  }
  RangeEncoder encoder;
  for (size_t i = 0; i < symbols.size(); ++i) {
    encoder.EncodeSymbol(symbols[i], tables[i], i);
  }
  return CodedStream{encoder.Finish(), symbols.size()};
}

std::vector<int64_t> DecodeSymbols(const CodedStream& stream,
                                   std::span<const FrequencyTable> tables) {
  if (stream.symbol_count != tables.size()) {
    throw Error(ErrorCode::kConfig,
                std::to_string(stream.symbol_count) + " symbols but " +
                    std::to_string(tables.size()) + " tables");
  }
  RangeDecoder decoder(stream.bytes);
  std::vector<int64_t> symbols(tables.size());
  for (size_t i = 0; i < tables.size(); ++i) {
    symbols[i] = decoder.DecodeSymbol(tables[i]);
  }
  decoder.Finish();
  return symbols;
}

}  // namespace lic
