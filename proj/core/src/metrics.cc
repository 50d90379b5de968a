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

#include "lic/metrics.h"

#include <stdio.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "byte_io.h"
#include "lic/status.h"

namespace lic {
namespace {

[[noreturn]] void Malformed(const std::string& msg) {
  throw Error(ErrorCode::kMalformed, msg);
}

// Cubic fit evaluated through its antiderivative. The abscissa is
// normalized before fitting for conditioning.
class Cubic {
 public:
  Cubic(std::span<const double> x, std::span<const double> y) {
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    center_ = 0.5 * (*lo + *hi);
    half_ = 0.5 * (*hi - *lo);
    std::vector<double> t(x.size());
    for (size_t i = 0; i < x.size(); ++i) t[i] = (x[i] - center_) / half_;
    coeffs_ = PolyFit(t, y, 3);
  }

  // Integral over [a, b] in the original abscissa.
  double Integral(double a, double b) const {
    return half_ * (Antiderivative((b - center_) / half_) -
                    Antiderivative((a - center_) / half_));
  }

 private:
  double Antiderivative(double t) const {
    double sum = 0.0;
    for (int i = static_cast<int>(coeffs_.size()) - 1; i >= 0; --i) {
      sum = sum * t + coeffs_[i] / (i + 1);
    }
    return sum * t;
  }

  double center_ = 0.0;
  double half_ = 1.0;
  std::vector<double> coeffs_;
};

struct Axis {
  std::vector<double> log_rate;
  std::vector<double> psnr;
};

Axis Prepare(const RdCurve& curve) {
  CheckRdCurve(curve);
  Axis axis;
  for (const RdPoint& p : curve.points) {
    axis.log_rate.push_back(std::log(p.bpp));
    axis.psnr.push_back(p.psnr);
  }
  return axis;
}

// Mean difference of the fits of `y` over `x` on the common x interval.
double MeanDifference(std::span<const double> x_test,
                      std::span<const double> y_test,
                      std::span<const double> x_anchor,
                      std::span<const double> y_anchor, const char* what) {
  const auto [tl, th] = std::minmax_element(x_test.begin(), x_test.end());
  const auto [al, ah] = std::minmax_element(x_anchor.begin(), x_anchor.end());
  const double lo = std::max(*tl, *al);
  const double hi = std::min(*th, *ah);
  if (!(hi > lo) || *tl == *th || *al == *ah) {
    throw Error(ErrorCode::kNoOverlap,
                std::string("curves do not overlap in ") + what);
  }
  const Cubic test(x_test, y_test);
  const Cubic anchor(x_anchor, y_anchor);
  return (test.Integral(lo, hi) - anchor.Integral(lo, hi)) / (hi - lo);
}

}  // namespace

PsnrResult PsnrRgb(const Image& a, const Image& b) {
  if (a.width != b.width || a.height != b.height ||
      a.rgb.size() != b.rgb.size()) {
    throw Error(ErrorCode::kConfig,
                "PSNR: image sizes differ (" + std::to_string(a.width) + "x" +
                    std::to_string(a.height) + " vs " +
                    std::to_string(b.width) + "x" + std::to_string(b.height) +
                    ")");
  }
  uint64_t sse = 0;
  for (size_t i = 0; i < a.rgb.size(); ++i) {
    const int d = static_cast<int>(a.rgb[i]) - static_cast<int>(b.rgb[i]);
    sse += static_cast<uint64_t>(d * d);
  }
  PsnrResult result;
  result.mse = static_cast<double>(sse) / static_cast<double>(a.rgb.size());
  if (sse == 0) {
    result.exact = true;
    result.db = kExactMatchPsnr;
  } else {
    result.db = 10.0 * std::log10(255.0 * 255.0 / result.mse);
  }
  return result;
}

double BitsPerPixel(size_t bytes, int width, int height) {
  return 8.0 * static_cast<double>(bytes) /
         (static_cast<double>(width) * height);
}

bool CheckRdCurve(const RdCurve& curve, std::string* warning) {
  const auto& pts = curve.points;
  if (pts.size() < 4) {
    Malformed("curve '" + curve.label + "' has " + std::to_string(pts.size()) +
              " points; at least 4 are required");
  }
  bool monotone = true;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (!std::isfinite(pts[i].bpp) || !std::isfinite(pts[i].psnr) ||
        !(pts[i].bpp > 0.0)) {
      Malformed("curve '" + curve.label + "' point " + std::to_string(i) +
                " is not a finite positive-rate point");
    }
    if (i > 0 && !(pts[i].bpp > pts[i - 1].bpp)) {
      Malformed("curve '" + curve.label + "' bpp is not strictly increasing");
    }
    if (i > 0 && pts[i].psnr < pts[i - 1].psnr) monotone = false;
  }
  if (!monotone && warning != nullptr) {
    *warning = "curve '" + curve.label + "' has decreasing PSNR";
  }
  return monotone;
}

double BdRate(const RdCurve& test, const RdCurve& anchor) {
  const Axis t = Prepare(test);
  const Axis a = Prepare(anchor);
  const double avg =
      MeanDifference(t.psnr, t.log_rate, a.psnr, a.log_rate, "PSNR");
  return std::expm1(avg) * 100.0;
}

double BdPsnr(const RdCurve& test, const RdCurve& anchor) {
  const Axis t = Prepare(test);
  const Axis a = Prepare(anchor);
  return MeanDifference(t.log_rate, t.psnr, a.log_rate, a.psnr, "rate");
}

std::vector<double> PolyFit(std::span<const double> x,
                            std::span<const double> y, int degree) {
  if (x.size() != y.size() || degree < 0 ||
      x.size() < static_cast<size_t>(degree) + 1) {
    Malformed("polynomial fit of degree " + std::to_string(degree) +
              " needs at least " + std::to_string(degree + 1) + " points");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd a(n, degree + 1);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double power = 1.0;
    for (int j = 0; j <= degree; ++j) {
      a(i, j) = power;
      power *= x[i];
    }
    b(i) = y[i];
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  return std::vector<double>(c.data(), c.data() + c.size());
}

std::string FormatRdCsv(std::span<const RdCurve> curves) {
  std::set<std::string> seen;
  std::string out = "label,bpp,psnr\n";
  for (const RdCurve& curve : curves) {
    if (curve.label.empty() ||
        curve.label.find_first_of(",\n\r\"") != std::string::npos) {
      Malformed("invalid curve label '" + curve.label + "'");
    }
    if (!seen.insert(curve.label).second) {
      Malformed("duplicate curve label '" + curve.label + "'");
    }
    for (const RdPoint& p : curve.points) {
      char row[96];
      snprintf(row, sizeof(row), ",%.17g,%.17g\n", p.bpp, p.psnr);
      out += curve.label;
      out += row;
    }
  }
  return out;
}

std::vector<RdCurve> ParseRdCsv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "label,bpp,psnr") {
    Malformed("RD CSV must start with 'label,bpp,psnr'");
  }
  std::vector<RdCurve> curves;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const size_t c1 = line.find(',');
    const size_t c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos || c1 == 0) {
      Malformed("RD CSV line " + std::to_string(line_no) +
                ": expected label,bpp,psnr");
    }
    const std::string label = line.substr(0, c1);
    RdPoint p;
    try {
      size_t used = 0;
      const std::string bpp = line.substr(c1 + 1, c2 - c1 - 1);
      const std::string psnr = line.substr(c2 + 1);
      p.bpp = std::stod(bpp, &used);
      if (used != bpp.size()) throw std::invalid_argument(bpp);
      p.psnr = std::stod(psnr, &used);
      if (used != psnr.size()) throw std::invalid_argument(psnr);
    } catch (const std::logic_error&) {
      Malformed("RD CSV line " + std::to_string(line_no) + ": bad number");
    }
    auto it = std::find_if(curves.begin(), curves.end(),
                           [&](const RdCurve& c) { return c.label == label; });
    if (it == curves.end()) {
      curves.push_back(RdCurve{label, {}});
      it = curves.end() - 1;
    }
    it->points.push_back(p);
  }
  return curves;
}

void WriteRdCsv(std::span<const RdCurve> curves,
                const std::filesystem::path& path) {
  const std::string text = FormatRdCsv(curves);
  WriteFileBytes(path, std::span<const uint8_t>(
                           reinterpret_cast<const uint8_t*>(text.data()),
                           text.size()));
}

std::vector<RdCurve> ReadRdCsv(const std::filesystem::path& path) {
  return ParseRdCsv(ReadFileText(path));
}

}  // namespace lic
