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

#include "lic/gaussian.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lic/status.h"

namespace lic {
namespace {

constexpr double kInvSqrtPi = 0.56418958354775628695;
constexpr double kSqrtHalf = 0.70710678118654752440;
constexpr double kSeriesLimit = 2.5;
// Continued-fraction depth ceil(300 / x^2) + 4: twice the depth at which the
// truncation error reaches double rounding.
constexpr double kFractionDepthScale = 300.0;
constexpr int kMaxFractionDepth = 96;
constexpr double kMuLimit = 1e6;

int64_t FloorDiv(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

double Erfc(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) return 2.0 - Erfc(-x);
  if (x < kSeriesLimit) {
    const double two_x2 = 2.0 * x * x;
    double term = x;
    double sum = x;
    for (int n = 1; n < 200; ++n) {
      term *= two_x2 / (2 * n + 1);
      sum += term;
      if (term < sum * 1e-17) break;
    }
    return 1.0 - 2.0 * kInvSqrtPi * std::exp(-x * x) * sum;
  }
  if (x > 27.0) return 0.0;  // below the smallest subnormal
  const int depth = std::min(
      kMaxFractionDepth,
      static_cast<int>(std::ceil(kFractionDepthScale / (x * x))) + 4);
  double f = x;
  for (int n = depth; n >= 1; --n) f = x + (0.5 * n) / f;
  return kInvSqrtPi * std::exp(-x * x) / f;
}

double NormalUpperTail(double z) { return 0.5 * Erfc(z * kSqrtHalf); }

double NormalIntervalMass(double lo, double hi) {
  if (lo >= 0.0) return NormalUpperTail(lo) - NormalUpperTail(hi);
  if (hi <= 0.0) return NormalUpperTail(-hi) - NormalUpperTail(-lo);
  return 1.0 - (NormalUpperTail(hi) + NormalUpperTail(-lo));
}

double SymbolProbability(int64_t s, double mu, double sigma) {
  if (!(sigma > 0.0)) {
    throw Error(ErrorCode::kDomain, "sigma must be positive, got " +
                                        std::to_string(sigma));
  }
  const double d = static_cast<double>(s) - mu;
  return NormalIntervalMass((d - 0.5) / sigma, (d + 0.5) / sigma);
}

double FoldedSymbolProbability(int64_t s, double mu, double sigma,
                               SymbolRange range) {
  if (!(sigma > 0.0)) {
    throw Error(ErrorCode::kDomain, "sigma must be positive, got " +
                                        std::to_string(sigma));
  }
  if (!range.Contains(s)) return 0.0;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const double d = static_cast<double>(s) - mu;
  const double lo = s == range.min ? -kInf : (d - 0.5) / sigma;
  const double hi = s == range.max ? kInf : (d + 0.5) / sigma;
  return NormalIntervalMass(lo, hi);
}

int64_t FrequencyTable::Lookup(uint32_t target) const {
  // Last i with cdf[i] <= target.
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
  return min_symbol + (it - cdf.begin()) - 1;
}

ScaleTable ScaleTable::Default() {
  constexpr int kEntries = 64;
  constexpr double kMin = 0.04;
  constexpr double kMax = 256.0;
  std::vector<double> values(kEntries);
  const double log_min = std::log(kMin);
  const double step = (std::log(kMax) - log_min) / (kEntries - 1);
  for (int i = 0; i < kEntries; ++i) values[i] = std::exp(log_min + step * i);
  values.front() = kMin;
  values.back() = kMax;
  return ScaleTable(std::move(values), 0);
}

ScaleTable::ScaleTable(std::vector<double> values, int id)
    : values_(std::move(values)), id_(id) {
  if (values_.size() < 2 || !(values_.front() > 0.0) ||
      !std::is_sorted(values_.begin(), values_.end())) {
    throw Error(ErrorCode::kConfig,
                "scale table needs >= 2 positive ascending entries");
  }
}

double ScaleTable::Clamp(double sigma) const {
  if (std::isnan(sigma)) return min();
  return std::clamp(sigma, min(), max());
}

int ScaleTable::Quantize(double sigma) const {
  return QuantizeSigma(sigma, values_);
}

int QuantizeSigma(double sigma, std::span<const double> table) {
  const int last = static_cast<int>(table.size()) - 1;
  if (std::isnan(sigma) || sigma <= table[0]) return 0;
  if (sigma >= table[last]) return last;
  const auto it = std::upper_bound(table.begin(), table.end(), sigma);
  const int hi = static_cast<int>(it - table.begin());
  const int lo = hi - 1;
  // Nearest in log domain: compare sigma^2 with the geometric midpoint^2.
  return sigma * sigma > table[lo] * table[hi] ? hi : lo;
}

FrequencyTable BuildFrequencyTable(double mu_offset, double sigma,
                                   SymbolRange range, int precision) {
  if (precision < 8 || precision > 16) {
    throw Error(ErrorCode::kConfig, "precision must lie in [8, 16], got " +
                                        std::to_string(precision));
  }
  const int64_t n = range.count();
  const int64_t total = int64_t{1} << precision;
  if (n < 2 || n > total) {
    throw Error(ErrorCode::kConfig,
                "range of " + std::to_string(n) +
                    " symbols cannot be coded at precision " +
                    std::to_string(precision));
  }
  FrequencyTable table;
  table.min_symbol = range.min;
  table.precision = precision;
  table.freq.resize(n);
  const double spread = static_cast<double>(total - n);
  int64_t used = 0;
  for (int64_t i = 0; i < n; ++i) {
    const double p =
        FoldedSymbolProbability(range.min + i, mu_offset, sigma, range);
    const int64_t f = 1 + static_cast<int64_t>(std::floor(p * spread));
    table.freq[i] = static_cast<uint32_t>(f);
    used += f;
  }
  // The leftover goes to the bin holding mu (ties to the lower bin), which
  // keeps tables for a symmetric density palindromic.
  const int64_t home =
      std::clamp<int64_t>(static_cast<int64_t>(std::ceil(mu_offset - 0.5)),
                          range.min, range.max) -
      range.min;
  table.freq[home] += static_cast<uint32_t>(total - used);
  table.cdf.resize(n + 1);
  table.cdf[0] = 0;
  for (int64_t i = 0; i < n; ++i) table.cdf[i + 1] = table.cdf[i] + table.freq[i];
  return table;
}

FrequencyTable BuildFrequencyTable(double mu_offset, const ScaleTable& scales,
                                   int sigma_index, SymbolRange range,
                                   int precision) {
  if (sigma_index < 0 || sigma_index >= scales.size()) {
    throw Error(ErrorCode::kConfig,
                "sigma index " + std::to_string(sigma_index) + " out of table");
  }
  return BuildFrequencyTable(mu_offset, scales[sigma_index], range, precision);
}

GaussianConditional::GaussianConditional(GaussianCoderConfig config,
                                         ScaleTable scales)
    : config_(config), scales_(std::move(scales)) {
  if (config_.half_range < 1 || config_.mu_fraction_bits < 0 ||
      config_.mu_fraction_bits > 20) {
    throw Error(ErrorCode::kConfig, "invalid Gaussian coder configuration");
  }
  // Validates precision against the range.
  BuildFrequencyTable(0.0, 1.0, ResidualRange(), config_.precision);
}

int64_t GaussianConditional::QuantizedMu(double mu) const {
  if (std::isnan(mu)) mu = 0.0;
  mu = std::clamp(mu, -kMuLimit, kMuLimit);
  return std::llround(std::ldexp(mu, config_.mu_fraction_bits));
}

int64_t GaussianConditional::Center(double mu) const {
  const int64_t one = int64_t{1} << config_.mu_fraction_bits;
  return FloorDiv(QuantizedMu(mu) + one / 2, one);
}

SymbolModel GaussianConditional::Model(double mu, double sigma) const {
  const int64_t one = int64_t{1} << config_.mu_fraction_bits;
  SymbolModel model;
  model.center = Center(mu);
  model.mu_numerator = static_cast<int>(QuantizedMu(mu) - model.center * one);
  model.sigma_index = scales_.Quantize(scales_.Clamp(sigma));
  model.table = Table(model.mu_numerator, model.sigma_index);
  return model;
}

FrequencyTable GaussianConditional::Table(int mu_numerator,
                                          int sigma_index) const {
  const double offset = std::ldexp(static_cast<double>(mu_numerator),
                                   -config_.mu_fraction_bits);
  return BuildFrequencyTable(offset, scales_, sigma_index, ResidualRange(),
                             config_.precision);
}

double GaussianConditional::SymbolBits(int64_t s, double mu,
                                       double sigma) const {
  const int64_t center = Center(mu);
  const SymbolRange range{center - config_.half_range,
                          center + config_.half_range};
  if (!range.Contains(s)) return std::numeric_limits<double>::infinity();
  const double p =
      FoldedSymbolProbability(s, mu, scales_.Clamp(sigma), range);
  const double floor_p = std::ldexp(1.0, -config_.precision);
  return -std::log2(std::max(p, floor_p));
}

double GaussianConditional::RateEstimate(const Tensor& symbols,
                                         const GaussianParams& params) const {
  if (!(symbols.shape() == params.mu.shape()) ||
      !(symbols.shape() == params.sigma.shape())) {
    throw Error(ErrorCode::kConfig, "rate estimate: shape mismatch between " +
                                        symbols.shape().ToString() +
                                        " and parameters");
  }
  double bits = 0.0;
  const auto s = symbols.data();
  const auto mu = params.mu.data();
  const auto sigma = params.sigma.data();
  for (size_t i = 0; i < s.size(); ++i) {
    bits += SymbolBits(static_cast<int64_t>(s[i]), mu[i], sigma[i]);
  }
  return bits;
}

}  // namespace lic
