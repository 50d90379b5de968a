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

#include "lic/architecture.h"

#include <stdlib.h>

#include <sstream>

#include "byte_io.h"
#include "lic/status.h"

namespace lic {
namespace {

[[noreturn]] void ConfigError(const std::string& message) {
  throw Error(ErrorCode::kConfig, message);
}

[[noreturn]] void Malformed(int line_no, const std::string& message) {
  throw Error(ErrorCode::kMalformed, "architecture line " +
                                         std::to_string(line_no) + ": " +
                                         message);
}

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

std::string_view Trim(std::string_view s) {
  const size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int ParseInt(std::string_view value, int line_no) {
  const std::string s(value);
  char* end = nullptr;
  const long v = strtol(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0') Malformed(line_no, "bad integer '" + s + "'");
  return static_cast<int>(v);
}

std::string ModuleOf(std::string_view name) {
  return std::string(name.substr(0, name.find('.')));
}

// Returns the output channel count of `chain` fed with `channels`.
int ChainChannels(std::span<const LayerSpec> chain, int channels,
                  std::string_view what) {
  for (const LayerSpec& spec : chain) {
    spec.Validate();
    if (!spec.HasParameters()) continue;
    if (spec.in_channels != channels) {
      ConfigError(std::string(what) + ": layer '" + spec.name + "' expects " +
                  std::to_string(spec.in_channels) + " input channels, chain provides " +
                  std::to_string(channels));
    }
    channels = spec.out_channels;
  }
  return channels;
}

void ExpectChannels(std::span<const LayerSpec> chain, int in, int out,
                    const std::string& what) {
  if (chain.empty()) ConfigError("module '" + what + "' has no layers");
  const int got = ChainChannels(chain, in, what);
  if (got != out) {
    ConfigError("module '" + what + "' produces " + std::to_string(got) +
                " channels, expected " + std::to_string(out));
  }
}

}  // namespace

std::vector<LayerSpec> Architecture::Chain(std::string_view prefix) const {
  std::vector<LayerSpec> out;
  for (const LayerSpec& spec : layers) {
    if (StartsWith(spec.name, prefix) && spec.name.size() > prefix.size() &&
        spec.name[prefix.size()] == '.') {
      out.push_back(spec);
    }
  }
  return out;
}

const LayerSpec& Architecture::Layer(std::string_view name) const {
  for (const LayerSpec& spec : layers) {
    if (spec.name == name) return spec;
  }
  ConfigError("architecture has no layer '" + std::string(name) + "'");
}

int Architecture::DownsamplingFactor() const {
  int factor = 1;
  for (const LayerSpec& spec : layers) {
    const std::string module = ModuleOf(spec.name);
    if ((module == "g_a" || module == "h_a") && spec.kind == LayerKind::kConv) {
      factor *= spec.stride;
    }
  }
  return factor;
}

void Architecture::Validate() const {
  if (latent_channels < 1 || hyper_channels < 1 || image_channels < 1) {
    ConfigError("architecture channel counts must be >= 1");
  }
  groups.CheckMatches(latent_channels);
  for (const LayerSpec& spec : layers) {
    const std::string module = ModuleOf(spec.name);
    if (module != "g_a" && module != "g_s" && module != "h_a" &&
        module != "h_s" && module != "ctx") {
      ConfigError("layer '" + spec.name + "' belongs to no known module");
    }
  }
  ExpectChannels(Chain("g_a"), image_channels, latent_channels, "g_a");
  ExpectChannels(Chain("g_s"), latent_channels, image_channels, "g_s");
  ExpectChannels(Chain("h_a"), latent_channels, hyper_channels, "h_a");
  ExpectChannels(Chain("h_s"), hyper_channels, 2 * latent_channels, "h_s");
  for (int g = 0; g < groups.num_groups(); ++g) {
    const std::string prefix = "ctx.g" + std::to_string(g);
    const int c_in = ContextInputChannels(g);
    const LayerSpec& branch = Layer(prefix + ".branch");
    if (branch.kind != LayerKind::kConv || branch.stride != 1 ||
        branch.padding * 2 + 1 != branch.kernel) {
      ConfigError("'" + branch.name + "' must be a same-size conv");
    }
    ExpectChannels(std::span<const LayerSpec>(&branch, 1), c_in, c_in,
                   branch.name);
    const std::vector<LayerSpec> attn = Chain(prefix + ".attn");
    ExpectChannels(attn, c_in, c_in, prefix + ".attn");
    if (attn.back().kind != LayerKind::kChannelSoftmax) {
      ConfigError("'" + prefix + ".attn' must end with channel_softmax");
    }
    for (const LayerSpec& spec : attn) {
      if (spec.HasParameters() && spec.kernel != 1) {
        ConfigError("'" + spec.name + "' must be a 1x1 conv");
      }
    }
    ExpectChannels(Chain(prefix + ".head"), c_in, 2 * groups.size(g),
                   prefix + ".head");
  }
}

Architecture ParseArchitecture(std::string_view text) {
  Architecture arch;
  bool have_groups = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = Trim(raw);
    const size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = Trim(line.substr(0, hash));
    if (line.empty()) continue;
    if (StartsWith(line, "layer ")) {
      LayerSpec spec;
      bool have_kind = false;
      std::istringstream fields{std::string(line.substr(6))};
      std::string field;
      while (fields >> field) {
        const size_t eq = field.find('=');
        if (eq == std::string::npos) Malformed(line_no, "expected key=value");
        const std::string key = field.substr(0, eq);
        const std::string_view value = std::string_view(field).substr(eq + 1);
        if (key == "name") {
          spec.name = std::string(value);
        } else if (key == "kind") {
          spec.kind = ParseLayerKind(value);
          have_kind = true;
        } else if (key == "in") {
          spec.in_channels = ParseInt(value, line_no);
        } else if (key == "out") {
          spec.out_channels = ParseInt(value, line_no);
        } else if (key == "kernel") {
          spec.kernel = ParseInt(value, line_no);
        } else if (key == "stride") {
          spec.stride = ParseInt(value, line_no);
        } else if (key == "padding") {
          spec.padding = ParseInt(value, line_no);
        } else {
          Malformed(line_no, "unknown layer key '" + key + "'");
        }
      }
      if (spec.name.empty() || !have_kind) {
        Malformed(line_no, "layer needs name= and kind=");
      }
      for (const LayerSpec& other : arch.layers) {
        if (other.name == spec.name) {
          Malformed(line_no, "duplicate layer '" + spec.name + "'");
        }
      }
      arch.layers.push_back(spec);
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string_view::npos) Malformed(line_no, "expected key=value");
    const std::string_view key = Trim(line.substr(0, eq));
    const std::string_view value = Trim(line.substr(eq + 1));
    if (key == "latent_channels") {
      arch.latent_channels = ParseInt(value, line_no);
    } else if (key == "hyper_channels") {
      arch.hyper_channels = ParseInt(value, line_no);
    } else if (key == "image_channels") {
      arch.image_channels = ParseInt(value, line_no);
    } else if (key == "groups") {
      std::vector<int> sizes;
      std::string item;
      std::istringstream items{std::string(value)};
      while (std::getline(items, item, ',')) {
        sizes.push_back(ParseInt(Trim(item), line_no));
      }
      arch.groups = GroupPlan(std::move(sizes));
      have_groups = true;
    } else {
      Malformed(line_no, "unknown key '" + std::string(key) + "'");
    }
  }
  if (!have_groups) arch.groups = GroupPlan::Default(arch.latent_channels);
  return arch;
}

std::string FormatArchitecture(const Architecture& arch) {
  std::ostringstream out;
  out << "image_channels=" << arch.image_channels << "\n"
      << "latent_channels=" << arch.latent_channels << "\n"
      << "hyper_channels=" << arch.hyper_channels << "\n"
      << "groups=" << arch.groups.ToString() << "\n";
  for (const LayerSpec& spec : arch.layers) {
    out << "layer name=" << spec.name << " kind=" << LayerKindName(spec.kind);
    if (spec.HasParameters()) {
      out << " in=" << spec.in_channels << " out=" << spec.out_channels
          << " kernel=" << spec.kernel << " stride=" << spec.stride
          << " padding=" << spec.padding;
    }
    out << "\n";
  }
  return out.str();
}

Architecture LoadArchitecture(const std::filesystem::path& path) {
  return ParseArchitecture(ReadFileText(path));
}

void SaveArchitecture(const Architecture& arch,
                      const std::filesystem::path& path) {
  const std::string text = FormatArchitecture(arch);
  WriteFileBytes(path, std::span<const uint8_t>(
                           reinterpret_cast<const uint8_t*>(text.data()),
                           text.size()));
}

double FlopsReport::HyperContextRatio() const {
  const uint64_t total = Total();
  if (total == 0) return 0.0;
  return static_cast<double>(h_a + h_s + ctx) / static_cast<double>(total);
}

ChainCost EstimateChain(std::span<const LayerSpec> chain, int channels,
                        int height, int width) {
  ChainCost cost{0, channels, height, width};
  for (const LayerSpec& spec : chain) {
    if (!spec.HasParameters()) continue;
    if (cost.channels != 0 && cost.channels != spec.in_channels) {
      ConfigError("inconsistent chain: layer '" + spec.name + "' expects " +
                  std::to_string(spec.in_channels) + " channels, got " +
                  std::to_string(cost.channels));
    }
    const auto [oh, ow] = spec.OutputDims(cost.height, cost.width);
    const uint64_t taps = static_cast<uint64_t>(spec.in_channels) *
                          spec.out_channels * spec.kernel * spec.kernel;
    if (spec.kind == LayerKind::kConv) {
      cost.macs += static_cast<uint64_t>(oh) * ow * taps;
    } else {
      cost.macs += static_cast<uint64_t>(cost.height) * cost.width * taps;
    }
    cost.channels = spec.out_channels;
    cost.height = oh;
    cost.width = ow;
  }
  return cost;
}

FlopsReport EstimateFlops(std::span<const LayerSpec> layers, int height,
                          int width) {
  std::vector<LayerSpec> g_a, g_s, h_a, h_s;
  std::vector<std::string> ctx_names;
  std::vector<std::vector<LayerSpec>> ctx_chains;
  for (const LayerSpec& spec : layers) {
    const std::string module = ModuleOf(spec.name);
    if (module == "g_a") {
      g_a.push_back(spec);
    } else if (module == "g_s") {
      g_s.push_back(spec);
    } else if (module == "h_a") {
      h_a.push_back(spec);
    } else if (module == "h_s") {
      h_s.push_back(spec);
    } else if (module == "ctx") {
      // One chain per "ctx.<group>" sub-module.
      const size_t second = spec.name.find('.', 4);
      const std::string sub = spec.name.substr(0, second);
      size_t i = 0;
      while (i < ctx_names.size() && ctx_names[i] != sub) ++i;
      if (i == ctx_names.size()) {
        ctx_names.push_back(sub);
        ctx_chains.emplace_back();
      }
      ctx_chains[i].push_back(spec);
    } else {
      ConfigError("layer '" + spec.name + "' belongs to no known module");
    }
  }
  FlopsReport report;
  const ChainCost analysis = EstimateChain(g_a, 0, height, width);
  report.g_a = analysis.macs;
  report.g_s = EstimateChain(g_s, 0, analysis.height, analysis.width).macs;
  const ChainCost hyper = EstimateChain(h_a, 0, analysis.height, analysis.width);
  report.h_a = hyper.macs;
  report.h_s = EstimateChain(h_s, 0, hyper.height, hyper.width).macs;
  for (const auto& chain : ctx_chains) {
    report.ctx += EstimateChain(chain, 0, analysis.height, analysis.width).macs;
  }
  return report;
}

}  // namespace lic
