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

#ifndef LIC_METRICS_H_
#define LIC_METRICS_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lic/image.h"

namespace lic {

inline constexpr double kExactMatchPsnr = 99.0;

struct PsnrResult {
  double db = 0.0;
  double mse = 0.0;
  bool exact = false;  // identical images; db is kExactMatchPsnr
};

// 10 log10(255^2 / MSE) with the MSE pooled over all three channels.
PsnrResult PsnrRgb(const Image& a, const Image& b);

// Bits per pixel for `bytes` over a width x height image.
double BitsPerPixel(size_t bytes, int width, int height);

struct RdPoint {
  double bpp = 0.0;
  double psnr = 0.0;

  bool operator==(const RdPoint&) const = default;
};

struct RdCurve {
  std::string label;
  std::vector<RdPoint> points;

  bool operator==(const RdCurve&) const = default;
};

// Curves used for Bjontegaard deltas need at least 4 finite points with
// bpp > 0 and strictly increasing bpp. Returns false (and fills `warning`)
// when PSNR decreases somewhere, which is allowed.
bool CheckRdCurve(const RdCurve& curve, std::string* warning = nullptr);

// Average rate difference of `test` against `anchor` in percent, from cubic
// fits of ln(bpp) over PSNR integrated on the common PSNR interval.
// Negative means `test` needs fewer bits.
double BdRate(const RdCurve& test, const RdCurve& anchor);

// Average PSNR difference in dB from cubic fits of PSNR over ln(bpp) on the
// common rate interval.
double BdPsnr(const RdCurve& test, const RdCurve& anchor);

// Least-squares polynomial coefficients, lowest degree first.
std::vector<double> PolyFit(std::span<const double> x,
                            std::span<const double> y, int degree);

// CSV with header "label,bpp,psnr", one row per point.
std::string FormatRdCsv(std::span<const RdCurve> curves);
std::vector<RdCurve> ParseRdCsv(std::string_view text);
void WriteRdCsv(std::span<const RdCurve> curves,
                const std::filesystem::path& path);
std::vector<RdCurve> ReadRdCsv(const std::filesystem::path& path);

}  // namespace lic

#endif  // LIC_METRICS_H_
