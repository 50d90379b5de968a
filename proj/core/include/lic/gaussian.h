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

#ifndef LIC_GAUSSIAN_H_
#define LIC_GAUSSIAN_H_

#include <stdint.h>

#include <span>
#include <vector>

#include "lic/tensor.h"

namespace lic {

// Complementary error function, self-contained so that every build derives
// the same coding tables: a positive-term power series
//   erf(x) = 2/sqrt(pi) * exp(-x^2) * sum_n (2x^2)^n x / (1*3*...*(2n+1))
// for |x| < 2.5 and the continued fraction
//   erfc(x) = exp(-x^2)/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
// truncated at depth min(96, ceil(300 / x^2) + 4) beyond. Absolute error is
// below 1e-15 over the real line.
double Erfc(double x);

// Standard normal upper tail Q(z) = 1 - Phi(z).
double NormalUpperTail(double z);
inline double NormalCdf(double z) { return NormalUpperTail(-z); }

// Standard normal mass of [lo, hi] (either bound may be infinite). Computed
// from upper tails so that mirrored intervals give bitwise equal results.
double NormalIntervalMass(double lo, double hi);

// Probability that a Gaussian(mu, sigma) sample rounds to integer s:
// Phi((s + 0.5 - mu) / sigma) - Phi((s - 0.5 - mu) / sigma).
// Throws kDomain for sigma <= 0 or NaN.
double SymbolProbability(int64_t s, double mu, double sigma);

// Inclusive integer range.
struct SymbolRange {
  int64_t min = -64;
  int64_t max = 64;

  int64_t count() const { return max - min + 1; }
  bool Contains(int64_t s) const { return s >= min && s <= max; }
};

// As SymbolProbability, with the mass below range.min folded into the first
// symbol and the mass above range.max into the last. Zero outside `range`.
double FoldedSymbolProbability(int64_t s, double mu, double sigma,
                               SymbolRange range);

// Integer model for the range coder: freq[i] is the frequency of symbol
// min_symbol + i; cdf has count + 1 entries, cdf[0] = 0, cdf[count] = total.
struct FrequencyTable {
  int64_t min_symbol = 0;
  int precision = 16;
  std::vector<uint32_t> freq;
  std::vector<uint32_t> cdf;

  uint32_t total() const { return 1u << precision; }
  int64_t count() const { return static_cast<int64_t>(freq.size()); }
  int64_t max_symbol() const { return min_symbol + count() - 1; }
  bool Contains(int64_t s) const { return s >= min_symbol && s <= max_symbol(); }

  // Symbol whose [cdf, cdf + freq) interval holds `target` < total().
  int64_t Lookup(uint32_t target) const;

  bool operator==(const FrequencyTable&) const = default;
};

// Log-spaced table of Gaussian scales; sigma is clamped to its endpoints.
class ScaleTable {
 public:
  // 64 entries from 0.04 to 256, geometric spacing.
  static ScaleTable Default();
  explicit ScaleTable(std::vector<double> values, int id = 0);

  int id() const { return id_; }
  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[i]; }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }
  std::span<const double> values() const { return values_; }

  double Clamp(double sigma) const;
  int Quantize(double sigma) const;

 private:
  std::vector<double> values_;
  int id_ = 0;
};

// Index of the entry nearest to sigma in the log domain; an exact geometric
// midpoint goes to the lower index. Values outside the table clamp to the
// first/last entry. `table` must be ascending with >= 2 entries.
int QuantizeSigma(double sigma, std::span<const double> table);

// Builds the frequency table for residuals in `range` of a Gaussian centred
// at mu_offset with scale sigma, tails folded into the edge symbols.
// Frequencies are 1 + floor(p * (2^precision - count)); the units left over
// by the floors go to the most probable symbol (lowest index on ties), so
// the table is exact, deterministic and palindromic for symmetric inputs.
// Throws kConfig when precision is outside [8, 16], the range has fewer than
// 2 symbols, or more symbols than 2^precision.
FrequencyTable BuildFrequencyTable(double mu_offset, double sigma,
                                   SymbolRange range, int precision);
FrequencyTable BuildFrequencyTable(double mu_offset, const ScaleTable& scales,
                                   int sigma_index, SymbolRange range,
                                   int precision);

// Per-element Gaussian parameters; sigma > 0 before clamping.
struct GaussianParams {
  Tensor mu;
  Tensor sigma;
};

// A symbol's coding model: residual s - center is coded with `table`.
struct SymbolModel {
  int64_t center = 0;
  int sigma_index = 0;
  int mu_numerator = 0;  // mu offset in units of 2^-mu_fraction_bits
  FrequencyTable table;
};

struct GaussianCoderConfig {
  int precision = 16;
  int half_range = 64;  // residuals in [-half_range, half_range]
  int mu_fraction_bits = 12;
};

// Maps (mu, sigma) to deterministic coding tables and rate estimates.
//
// mu is snapped to a multiple of 2^-mu_fraction_bits; center is that value
// rounded half up and the remaining offset lies in [-0.5, 0.5). sigma is
// clamped to the scale table and snapped to its nearest entry.
class GaussianConditional {
 public:
  explicit GaussianConditional(GaussianCoderConfig config = {},
                               ScaleTable scales = ScaleTable::Default());

  const GaussianCoderConfig& config() const { return config_; }
  const ScaleTable& scales() const { return scales_; }

  SymbolRange ResidualRange() const {
    return SymbolRange{-config_.half_range, config_.half_range};
  }

  // Center of the coding range for mean mu.
  int64_t Center(double mu) const;
  SymbolModel Model(double mu, double sigma) const;
  // Table for the quantized (mu offset, sigma index) pair.
  FrequencyTable Table(int mu_numerator, int sigma_index) const;

  // -log2 of the folded probability of s under (mu, clamped sigma), with
  // the probability floored at 2^-precision (the smallest frequency the
  // coder can assign). Returns +inf for s outside the coding range.
  double SymbolBits(int64_t s, double mu, double sigma) const;

  // Sum of SymbolBits over all elements. Throws kConfig on shape mismatch.
  double RateEstimate(const Tensor& symbols,
                      const GaussianParams& params) const;

 private:
  int64_t QuantizedMu(double mu) const;

  GaussianCoderConfig config_;
  ScaleTable scales_;
};

}  // namespace lic

#endif  // LIC_GAUSSIAN_H_
