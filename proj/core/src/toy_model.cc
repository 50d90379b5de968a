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

#include "lic/toy_model.h"

#include <stdio.h>

#include <cmath>
#include <random>
#include <string>

#include "byte_io.h"
#include "lic/layers.h"
#include "lic/status.h"

namespace lic {
namespace {

constexpr int kCalibrationSize = 128;
constexpr double kHyperScale = 2.0;

LayerSpec Conv(std::string name, int in, int out, int kernel, int stride,
               int padding) {
  return LayerSpec{std::move(name), LayerKind::kConv, in, out, kernel, stride,
                   padding};
}

LayerSpec Deconv(std::string name, int in, int out, int kernel, int stride,
                 int padding) {
  return LayerSpec{std::move(name), LayerKind::kDeconv, in, out, kernel,
                   stride, padding};
}

LayerSpec Act(std::string name, LayerKind kind) {
  LayerSpec spec;
  spec.name = std::move(name);
  spec.kind = kind;
  return spec;
}

double Rms(const Tensor& t) {
  double sum = 0.0;
  for (float v : t.data()) sum += static_cast<double>(v) * v;
  return std::sqrt(sum / static_cast<double>(t.size()));
}

void Scale(WeightStore& store, const std::string& name, double factor) {
  Tensor t = store.Get(name);
  for (float& v : t.data()) v = static_cast<float>(v * factor);
  store.Set(name, std::move(t));
}

class Initializer {
 public:
  explicit Initializer(uint64_t seed) : rng_(seed) {}

  // Uniform with variance gain / fan_in.
  void Layer(WeightStore& store, const LayerSpec& spec, double gain,
             bool zero_mean = false) {
    const Shape shape = spec.WeightShape();
    const int fan_in = spec.in_channels * spec.kernel * spec.kernel;
    const double limit = std::sqrt(3.0 * gain / fan_in);
    std::uniform_real_distribution<double> dist(-limit, limit);
    Tensor w(shape);
    for (float& v : w.data()) v = static_cast<float>(dist(rng_));
    if (zero_mean) {
      // Each output channel sums to zero over (ci, ky, kx).
      const bool deconv = spec.kind == LayerKind::kDeconv;
      for (int co = 0; co < spec.out_channels; ++co) {
        double sum = 0.0;
        int n = 0;
        for (int ci = 0; ci < spec.in_channels; ++ci) {
          for (int k = 0; k < spec.kernel * spec.kernel; ++k) {
            sum += deconv ? w.at(ci, co, k / spec.kernel, k % spec.kernel)
                          : w.at(co, ci, k / spec.kernel, k % spec.kernel);
            ++n;
          }
        }
        const float mean = static_cast<float>(sum / n);
        for (int ci = 0; ci < spec.in_channels; ++ci) {
          for (int k = 0; k < spec.kernel * spec.kernel; ++k) {
            float& v = deconv ? w.at(ci, co, k / spec.kernel, k % spec.kernel)
                              : w.at(co, ci, k / spec.kernel, k % spec.kernel);
            v -= mean;
          }
        }
      }
    }
    store.Add(spec.WeightName(), std::move(w));
    store.Add(spec.BiasName(), Tensor(spec.BiasShape()));
  }

  Tensor Noise(const Shape& shape) {
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    Tensor t(shape);
    for (float& v : t.data()) v = static_cast<float>(dist(rng_));
    return t;
  }

 private:
  std::mt19937_64 rng_;
};

void InitChain(Initializer& init, WeightStore& store,
               const std::vector<LayerSpec>& chain, double gain,
               bool zero_mean_first) {
  bool first = true;
  for (const LayerSpec& spec : chain) {
    if (!spec.HasParameters()) continue;
    init.Layer(store, spec, gain, first && zero_mean_first);
    first = false;
  }
}

const LayerSpec& LastParametric(const std::vector<LayerSpec>& chain) {
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    if (it->HasParameters()) return *it;
  }
  throw Error(ErrorCode::kConfig, "chain has no parametric layer");
}

}  // namespace

Architecture MakeToyArchitecture(const ToyConfig& config) {
  const int n = config.main_channels;
  const int m = config.latent_channels;
  Architecture arch;
  arch.image_channels = 3;
  arch.latent_channels = m;
  arch.hyper_channels = config.hyper_channels;
  arch.groups =
      config.groups.empty() ? GroupPlan::Default(m) : GroupPlan(config.groups);
  auto& l = arch.layers;

  const int enc[] = {3, n, n, n, m};
  for (int i = 0; i < 4; ++i) {
    l.push_back(Conv("g_a." + std::to_string(2 * i), enc[i], enc[i + 1], 5, 2,
                     2));
    if (i < 3) l.push_back(Act("g_a." + std::to_string(2 * i + 1), LayerKind::kRelu));
  }
  const int dec[] = {m, n, n, n, 3};
  for (int i = 0; i < 4; ++i) {
    l.push_back(Deconv("g_s." + std::to_string(2 * i), dec[i], dec[i + 1], 4,
                       2, 1));
    if (i < 3) l.push_back(Act("g_s." + std::to_string(2 * i + 1), LayerKind::kRelu));
  }
  l.push_back(Conv("h_a.0", m, config.hyper_hidden, 3, 2, 1));
  l.push_back(Act("h_a.1", LayerKind::kRelu));
  l.push_back(Conv("h_a.2", config.hyper_hidden, config.hyper_channels, 3, 2, 1));
  l.push_back(Deconv("h_s.0", config.hyper_channels, config.hyper_hidden, 4, 2, 1));
  l.push_back(Act("h_s.1", LayerKind::kRelu));
  l.push_back(Deconv("h_s.2", config.hyper_hidden, 2 * m, 4, 2, 1));

  for (int g = 0; g < arch.groups.num_groups(); ++g) {
    const std::string p = "ctx.g" + std::to_string(g);
    const int c_in = arch.ContextInputChannels(g);
    l.push_back(Conv(p + ".branch", c_in, c_in, 5, 1, 2));
    l.push_back(Conv(p + ".attn.0", c_in, config.attention_hidden, 1, 1, 0));
    l.push_back(Act(p + ".attn.1", LayerKind::kRelu));
    l.push_back(Conv(p + ".attn.2", config.attention_hidden, c_in, 1, 1, 0));
    l.push_back(Act(p + ".attn.3", LayerKind::kChannelSoftmax));
    l.push_back(Conv(p + ".head.0", c_in, config.head_hidden, 1, 1, 0));
    l.push_back(Act(p + ".head.1", LayerKind::kRelu));
    l.push_back(Conv(p + ".head.2", config.head_hidden, 2 * arch.groups.size(g),
                     1, 1, 0));
  }
  arch.Validate();
  return arch;
}

WeightStore MakeToyWeights(const Architecture& arch, uint64_t seed,
                           double latent_scale) {
  arch.Validate();
  Initializer init(seed);
  WeightStore store;
  const auto g_a = arch.Chain("g_a");
  const auto h_a = arch.Chain("h_a");
  const auto h_s = arch.Chain("h_s");
  InitChain(init, store, g_a, 2.0, true);
  InitChain(init, store, arch.Chain("g_s"), 2.0, false);
  InitChain(init, store, h_a, 2.0, false);
  InitChain(init, store, h_s, 2.0, false);

  // Calibrate the analysis side on uniform noise.
  const Tensor noise = init.Noise(
      Shape{1, arch.image_channels, kCalibrationSize, kCalibrationSize});
  const Tensor y = RunChain(noise, g_a, store);
  Scale(store, LastParametric(g_a).WeightName(), latent_scale / Rms(y));
  const Tensor y_cal = RunChain(noise, g_a, store);
  const Tensor z = RunChain(y_cal, h_a, store);
  Scale(store, LastParametric(h_a).WeightName(), kHyperScale / Rms(z));

  // Mid-grey output bias for the synthesis transform.
  const LayerSpec last = LastParametric(arch.Chain("g_s"));
  store.Set(last.BiasName(), Tensor(last.BiasShape(), 0.5f));

  const float log_scale = static_cast<float>(std::log(latent_scale));
  for (int g = 0; g < arch.groups.num_groups(); ++g) {
    const std::string p = "ctx.g" + std::to_string(g);
    init.Layer(store, arch.Layer(p + ".branch"), 0.5);
    InitChain(init, store, arch.Chain(p + ".attn"), 1.0, false);
    const LayerSpec& h0 = arch.Layer(p + ".head.0");
    const LayerSpec& h2 = arch.Layer(p + ".head.2");
    init.Layer(store, h0, 2.0);
    init.Layer(store, h2, 0.01);
    Tensor bias(h2.BiasShape());
    const int size = arch.groups.size(g);
    for (int c = size; c < 2 * size; ++c) bias.at(c, 0, 0, 0) = log_scale;
    store.Set(h2.BiasName(), std::move(bias));
  }
  return store;
}

double ToyLatentScale(double lambda) {
  return 1.5 * std::sqrt(lambda / kReferenceLambdas[0]);
}

void WriteToyModelDir(const std::filesystem::path& dir,
                      const ToyConfig& config,
                      const std::vector<double>& lambdas) {
  if (lambdas.empty()) {
    throw Error(ErrorCode::kConfig, "toy model needs at least one lambda");
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIo,
                "cannot create '" + dir.string() + "': " + ec.message());
  }
  const Architecture arch = MakeToyArchitecture(config);
  SaveArchitecture(arch, dir / "arch.txt");
  std::string index;
  for (size_t i = 0; i < lambdas.size(); ++i) {
    const std::string file = "lambda_" + std::to_string(i) + ".lw";
    SaveWeights(MakeToyWeights(arch, config.seed + i,
                               ToyLatentScale(lambdas[i])),
                dir / file);
    char line[128];
    snprintf(line, sizeof(line), "index=%zu lambda=%.17g weights=%s\n", i,
             lambdas[i], file.c_str());
    index += line;
  }
  const std::vector<uint8_t> bytes(index.begin(), index.end());
  WriteFileBytes(dir / "lambdas.txt", bytes);
}

}  // namespace lic
