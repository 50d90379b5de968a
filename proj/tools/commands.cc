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

#include "commands.h"

#include <glob.h>
#include <stdio.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iterator>
#include <mutex>
#include <ostream>
#include <thread>

#include "lic/architecture.h"
#include "lic/codec.h"
#include "lic/metrics.h"
#include "lic/quantizer.h"
#include "lic/status.h"
#include "lic/toy_model.h"

namespace lic::cli {
namespace {

std::string Fmt(const char* format, double v) {
  char buf[64];
  snprintf(buf, sizeof(buf), format, v);
  return buf;
}

std::vector<uint8_t> ReadAll(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return std::vector<uint8_t>(std::istreambuf_iterator<char>(in), {});
}

void WriteAll(const std::string& path, const std::vector<uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
}

std::string RequireModelDir(const std::string& dir) {
  if (dir.empty()) {
    throw Error(ErrorCode::kConfig,
                "no model directory: pass --model-dir or set LIC_MODEL_DIR");
  }
  return dir;
}

std::vector<std::string> Glob(const std::string& pattern) {
  glob_t g{};
  const int rc = glob(pattern.c_str(), 0, nullptr, &g);
  std::vector<std::string> paths;
  if (rc == 0) paths.assign(g.gl_pathv, g.gl_pathv + g.gl_pathc);
  globfree(&g);
  if (paths.empty()) {
    throw Error(ErrorCode::kIo, "no files match '" + pattern + "'");
  }
  std::sort(paths.begin(), paths.end());
  return paths;
}

struct ImageScore {
  double bpp = 0.0;
  double psnr = 0.0;
};

// Codes every image with `model`, up to `jobs` images at a time.
std::vector<ImageScore> CodeDataset(const std::vector<Image>& images,
                                    const Model& model,
                                    const CodecOptions& options, int jobs) {
  std::vector<ImageScore> scores(images.size());
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (size_t i = next++; i < images.size(); i = next++) {
      try {
        const EncodeResult enc = EncodeImage(images[i], model, options);
        const DecodeResult dec = DecodeImage(enc.bytes, model);
        if (!(dec.image == enc.reconstruction)) {
          throw Error(ErrorCode::kCoding,
                      "decoder output differs from the encoder reconstruction");
        }
        scores[i].bpp = enc.bpp;
        scores[i].psnr = PsnrRgb(images[i], dec.image).db;
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(images.size())));
  std::vector<std::thread> threads;
  for (int t = 1; t < n; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  return scores;
}

void PrintBdReport(const std::vector<RdCurve>& tests,
                   const std::vector<RdCurve>& anchors, std::ostream& out) {
  char line[256];
  snprintf(line, sizeof(line), "%-16s %-16s %12s %12s\n", "method", "anchor",
           "BD-RATE(%)", "BD-PSNR(dB)");
  out << line;
  for (const RdCurve& test : tests) {
    for (const RdCurve& anchor : anchors) {
      const double rate = BdRate(test, anchor);
      const double psnr = BdPsnr(test, anchor);
      snprintf(line, sizeof(line), "%-16s %-16s %12.4f %12.4f\n",
               test.label.c_str(), anchor.label.c_str(), rate, psnr);
      out << line;
    }
  }
}

}  // namespace

void RunEncode(const EncodeOptions& o, std::ostream& out) {
  const Model model = LoadModel(RequireModelDir(o.model_dir), o.lambda_index);
  const Image image = ReadPng(o.input);
  CodecOptions options;
  options.step = o.step;
  options.upper_bound = o.upper_bound;
  const EncodeResult r = EncodeImage(image, model, options);
  WriteAll(o.output, r.bytes);
  const double pixels = static_cast<double>(image.width) * image.height;
  out << "bytes=" << r.bytes.size() << " bpp=" << Fmt("%.6f", r.bpp)
      << " payload_bpp=" << Fmt("%.6f", r.payload_bpp)
      << " estimate_bpp=" << Fmt("%.6f", r.rate_bits() / pixels)
      << " width=" << image.width << " height=" << image.height
      << " lambda_index=" << model.lambda_index << "\n";
}

void RunDecode(const DecodeOptions& o, std::ostream& out) {
  const std::vector<uint8_t> bytes = ReadAll(o.input);
  int index = o.lambda_index;
  if (index < 0) index = ParseContainer(bytes).lambda_index;
  const Model model = LoadModel(RequireModelDir(o.model_dir), index);
  const DecodeResult r = DecodeImage(bytes, model);
  WritePng(r.image, o.output);
  out << "width=" << r.image.width << " height=" << r.image.height
      << " bpp=" << Fmt("%.6f", BitsPerPixel(bytes.size(), r.image.width,
                                             r.image.height))
      << "\n";
}

void RunEval(const EvalOptions& o, std::ostream& out) {
  std::vector<RdCurve> tests;
  if (!o.rd_input.empty()) {
    tests = ReadRdCsv(o.rd_input);
  } else {
    if (o.dataset.empty()) {
      throw Error(ErrorCode::kConfig, "eval needs --dataset or --rd");
    }
    const std::string dir = RequireModelDir(o.model_dir);
    std::vector<Image> images;
    for (const std::string& path : Glob(o.dataset)) images.push_back(ReadPng(path));
    std::vector<int> indices = o.lambdas;
    if (indices.empty()) {
      for (const ModelEntry& e : ReadModelIndex(dir)) indices.push_back(e.index);
    }
    CodecOptions options;
    options.step = o.step;
    options.upper_bound = o.upper_bound;
    RdCurve curve{o.label, {}};
    for (int index : indices) {
      const Model model = LoadModel(dir, index);
      const std::vector<ImageScore> scores =
          CodeDataset(images, model, options, o.jobs);
      RdPoint p;
      for (const ImageScore& s : scores) {
        p.bpp += s.bpp;
        p.psnr += s.psnr;
      }
      p.bpp /= static_cast<double>(scores.size());
      p.psnr /= static_cast<double>(scores.size());
      curve.points.push_back(p);
    }
    std::sort(curve.points.begin(), curve.points.end(),
              [](const RdPoint& a, const RdPoint& b) { return a.bpp < b.bpp; });
    tests.push_back(std::move(curve));
  }
  if (!o.output.empty()) WriteRdCsv(tests, o.output);
  out << FormatRdCsv(tests);
  if (!o.anchor.empty()) {
    const std::vector<RdCurve> anchors = ReadRdCsv(o.anchor);
    out << "\n";
    PrintBdReport(tests, anchors, out);
  }
}

void RunQuantizerTable(const QuantizerTableOptions& o, std::ostream& out) {
  out << "k,bias,a,b,c\n";
  for (int k = 0; k <= o.max_group; ++k) {
    QuantizerConfig config;
    config.step = o.step;
    config.upper_bound = o.upper_bound;
    config.group_index = k;
    QuantizerConstants q;
    try {
      q = DeriveConstants(config);
    } catch (const Error& e) {
      out.flush();
      throw Error(e.code(), "k=" + std::to_string(k) + ": " + e.what());
    }
    out << k << "," << Fmt("%.17g", q.bias) << "," << Fmt("%.17g", q.a) << ","
        << Fmt("%.17g", q.b) << "," << Fmt("%.17g", q.c) << "\n";
  }
}

void RunFlops(const FlopsOptions& o, std::ostream& out) {
  std::vector<std::string> columns;
  std::vector<FlopsReport> reports;
  auto add = [&](const Architecture& arch, const std::string& name) {
    const int down = arch.DownsamplingFactor();
    const int h = (o.height + down - 1) / down * down;
    const int w = (o.width + down - 1) / down * down;
    columns.push_back(name);
    reports.push_back(EstimateFlops(arch.layers, h, w));
  };
  if (!o.arch.empty()) {
    add(LoadArchitecture(o.arch), "arch");
  } else {
    if (o.widths.empty()) throw Error(ErrorCode::kConfig, "no widths to sweep");
    for (int width : o.widths) {
      ToyConfig config;
      config.hyper_hidden = width;
      config.attention_hidden = width;
      config.head_hidden = width;
      add(MakeToyArchitecture(config), std::to_string(width));
    }
  }
  // FLOPs count a multiply-add as two operations.
  auto gflops = [](uint64_t macs) { return 2.0 * static_cast<double>(macs) / 1e9; };
  char cell[64];
  auto row = [&](const std::string& name, auto value, const char* format) {
    snprintf(cell, sizeof(cell), "%-24s", name.c_str());
    out << cell;
    for (const FlopsReport& r : reports) {
      snprintf(cell, sizeof(cell), format, value(r));
      out << cell;
    }
    out << "\n";
  };
  out << "GFLOPs at " << o.width << "x" << o.height << "\n";
  snprintf(cell, sizeof(cell), "%-24s", "channels");
  out << cell;
  for (const std::string& c : columns) {
    snprintf(cell, sizeof(cell), "%12s", c.c_str());
    out << cell;
  }
  out << "\n";
  row("backbone g_a", [&](const FlopsReport& r) { return gflops(r.g_a); }, "%12.2f");
  row("backbone g_s", [&](const FlopsReport& r) { return gflops(r.g_s); }, "%12.2f");
  row("hyper context h_a", [&](const FlopsReport& r) { return gflops(r.h_a); }, "%12.2f");
  row("hyper context h_s", [&](const FlopsReport& r) { return gflops(r.h_s); }, "%12.2f");
  row("hyper context ctx", [&](const FlopsReport& r) { return gflops(r.ctx); }, "%12.2f");
  row("total", [&](const FlopsReport& r) { return gflops(r.Total()); }, "%12.2f");
  row("hyper context ratio(%)",
      [](const FlopsReport& r) { return 100.0 * r.HyperContextRatio(); }, "%12.2f");
}

void RunToyModel(const ToyModelOptions& o, std::ostream& out) {
  if (o.output.empty()) throw Error(ErrorCode::kConfig, "toy-model needs --out");
  ToyConfig config;
  config.seed = o.seed;
  WriteToyModelDir(o.output, config);
  out << "wrote " << kReferenceLambdas.size() << " models to " << o.output
      << "\n";
}

}  // namespace lic::cli
