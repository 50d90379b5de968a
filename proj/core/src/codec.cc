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

#include "lic/codec.h"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "byte_io.h"
#include "lic/layers.h"
#include "lic/quantizer.h"
#include "lic/range_coder.h"
#include "lic/status.h"

namespace lic {
namespace {

constexpr uint8_t kMagic[4] = {'L', 'I', 'C', 'B'};
constexpr uint32_t kMaxDimension = 1u << 16;

[[noreturn]] void BadContainer(const std::string& msg) {
  throw Error(ErrorCode::kBadContainer, msg);
}

uint32_t Crc32(std::span<const uint8_t> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; containers are far below 4 GiB.
  crc = crc32(crc, bytes.data(), static_cast<uInt>(bytes.size()));
  return static_cast<uint32_t>(crc);
}

uint16_t ToE4(double v, const char* what) {
  const double scaled = std::round(v * 1e4);
  if (!(scaled >= 0.0 && scaled <= 65535.0)) {
    throw Error(ErrorCode::kConfig,
                std::string(what) + " must lie in [0, 6.5535]");
  }
  return static_cast<uint16_t>(scaled);
}

int RoundUp(int v, int multiple) {
  return (v + multiple - 1) / multiple * multiple;
}

// Per-image coding state shared by the encoder and the decoder. Everything
// here is derived from container fields and the model, never from y.
struct Session {
  Session(const Model& m, const Container& c, const GaussianCoderConfig& coder)
      : model(m), gc(coder) {
    const Architecture& arch = model.arch;
    for (int g = 0; g < arch.groups.num_groups(); ++g) {
      QuantizerConfig q;
      q.upper_bound = c.upper_bound_e4 / 1e4;
      q.step = c.step_e4 / 1e4;
      q.group_index = g;
      quantizers.push_back(DeriveConstants(q));
    }
    const int down = arch.DownsamplingFactor();
    padded_h = RoundUp(static_cast<int>(c.height), down);
    padded_w = RoundUp(static_cast<int>(c.width), down);
    const ChainCost y = EstimateChain(arch.Chain("g_a"), arch.image_channels,
                                      padded_h, padded_w);
    latent = Shape{1, y.channels, y.height, y.width};
    const ChainCost z =
        EstimateChain(arch.Chain("h_a"), y.channels, y.height, y.width);
    hyper = Shape{1, z.channels, z.height, z.width};
  }

  std::vector<FrequencyTable> HyperTables(
      std::span<const uint8_t> sigma_index) const {
    std::vector<FrequencyTable> per_channel;
    for (uint8_t idx : sigma_index) per_channel.push_back(gc.Table(0, idx));
    std::vector<FrequencyTable> tables;
    tables.reserve(hyper.size());
    for (int c = 0; c < hyper.channels; ++c) {
      for (int i = 0; i < hyper.height * hyper.width; ++i) {
        tables.push_back(per_channel[c]);
      }
    }
    return tables;
  }

  Tensor Synthesize(const Tensor& y_hat) const {
    return RunChain(y_hat, model.arch.Chain("g_s"), model.weights);
  }

  const Model& model;
  GaussianConditional gc;
  std::vector<QuantizerConstants> quantizers;
  int padded_h = 0;
  int padded_w = 0;
  Shape latent;
  Shape hyper;
};

void CheckCompatible(const Container& c, const Model& model) {
  if (c.model_hash != model.hash || c.lambda_index != model.lambda_index) {
    throw Error(ErrorCode::kModelMismatch,
                "stream was encoded with model hash " +
                    std::to_string(c.model_hash) + " lambda index " +
                    std::to_string(c.lambda_index) + "; loaded model has " +
                    std::to_string(model.hash) + " lambda index " +
                    std::to_string(model.lambda_index));
  }
  if (c.group_sizes != model.arch.groups.sizes()) {
    throw Error(ErrorCode::kModelMismatch,
                "stream group plan does not match the model's " +
                    model.arch.groups.ToString());
  }
  if (static_cast<int>(c.hyper_sigma.size()) != model.arch.hyper_channels) {
    throw Error(ErrorCode::kModelMismatch,
                "stream has " + std::to_string(c.hyper_sigma.size()) +
                    " hyper channels, model has " +
                    std::to_string(model.arch.hyper_channels));
  }
}

}  // namespace

void CheckWeights(const Architecture& arch, const WeightStore& weights) {
  for (const LayerSpec& spec : arch.layers) {
    if (!spec.HasParameters()) continue;
    if (!(weights.Get(spec.WeightName()).shape() == spec.WeightShape())) {
      throw Error(ErrorCode::kConfig,
                  "'" + spec.WeightName() + "' has shape " +
                      weights.Get(spec.WeightName()).shape().ToString() +
                      ", expected " + spec.WeightShape().ToString());
    }
    if (!(weights.Get(spec.BiasName()).shape() == spec.BiasShape())) {
      throw Error(ErrorCode::kConfig,
                  "'" + spec.BiasName() + "' has shape " +
                      weights.Get(spec.BiasName()).shape().ToString() +
                      ", expected " + spec.BiasShape().ToString());
    }
  }
}

Model MakeModel(Architecture arch, WeightStore weights, int lambda_index,
                double lambda) {
  arch.Validate();
  CheckWeights(arch, weights);
  Model model;
  model.hash = Fnv1a64(SerializeWeights(weights));
  model.arch = std::move(arch);
  model.weights = std::move(weights);
  model.lambda_index = lambda_index;
  model.lambda = lambda;
  return model;
}

std::vector<ModelEntry> ReadModelIndex(const std::filesystem::path& dir) {
  const std::filesystem::path path = dir / "lambdas.txt";
  std::istringstream in(ReadFileText(path));
  std::vector<ModelEntry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    ModelEntry e;
    bool has_index = false, has_lambda = false;
    std::istringstream fields(line);
    std::string field;
    while (fields >> field) {
      const size_t eq = field.find('=');
      const std::string key = field.substr(0, eq);
      const std::string value =
          eq == std::string::npos ? "" : field.substr(eq + 1);
      try {
        if (key == "index") {
          e.index = std::stoi(value);
          has_index = true;
        } else if (key == "lambda") {
          e.lambda = std::stod(value);
          has_lambda = true;
        } else if (key == "weights") {
          e.weights_file = value;
        } else {
          throw std::invalid_argument(key);
        }
      } catch (const std::logic_error&) {
        throw Error(ErrorCode::kConfig, path.string() + ":" +
                                            std::to_string(line_no) +
                                            ": bad field '" + field + "'");
      }
    }
    if (!has_index || !has_lambda || e.weights_file.empty() || e.index < 0 ||
        e.index > 255) {
      throw Error(ErrorCode::kConfig,
                  path.string() + ":" + std::to_string(line_no) +
                      ": expected index=<0..255> lambda=<x> weights=<file>");
    }
    for (const ModelEntry& other : entries) {
      if (other.index == e.index) {
        throw Error(ErrorCode::kConfig, path.string() + ": duplicate index " +
                                            std::to_string(e.index));
      }
    }
    entries.push_back(e);
  }
  if (entries.empty()) {
    throw Error(ErrorCode::kConfig, path.string() + " lists no models");
  }
  return entries;
}

Model LoadModel(const std::filesystem::path& dir, int lambda_index) {
  const std::vector<ModelEntry> entries = ReadModelIndex(dir);
  for (const ModelEntry& e : entries) {
    if (e.index != lambda_index) continue;
    Architecture arch = LoadArchitecture(dir / "arch.txt");
    const std::vector<uint8_t> bytes = ReadFileBytes(dir / e.weights_file);
    WeightStore weights = ParseWeights(bytes);
    arch.Validate();
    CheckWeights(arch, weights);
    Model model;
    model.arch = std::move(arch);
    model.weights = std::move(weights);
    model.hash = Fnv1a64(bytes);
    model.lambda_index = e.index;
    model.lambda = e.lambda;
    return model;
  }
  throw Error(ErrorCode::kConfig, "no model with lambda index " +
                                      std::to_string(lambda_index) + " in " +
                                      dir.string());
}

uint32_t SymbolPlaneCrc(const Tensor& z_hat, const Tensor& y_hat) {
  std::vector<uint8_t> plane;
  plane.reserve(4 * (z_hat.size() + y_hat.size()));
  for (const Tensor* t : {&z_hat, &y_hat}) {
    for (float v : t->data()) {
      AppendLE(plane, static_cast<uint32_t>(static_cast<int32_t>(v)), 4);
    }
  }
  return Crc32(plane);
}

size_t Container::PayloadBytes() const {
  size_t n = hyper_stream.size();
  for (const auto& s : unit_streams) n += s.size();
  return n;
}

std::vector<uint8_t> SerializeContainer(const Container& c) {
  if (c.group_sizes.empty() || c.group_sizes.size() > 255 ||
      c.unit_streams.size() != 2 * c.group_sizes.size() ||
      c.hyper_sigma.size() > 255 || c.lambda_index < 0 ||
      c.lambda_index > 255 || c.version != kContainerVersion) {
    BadContainer("container fields out of range");
  }
  std::vector<uint8_t> out(std::begin(kMagic), std::end(kMagic));
  AppendU8(out, c.version);
  AppendVarint(out, c.width);
  AppendVarint(out, c.height);
  AppendLE(out, c.model_hash, 8);
  AppendU8(out, c.lambda_index);
  AppendU8(out, static_cast<uint32_t>(c.group_sizes.size()));
  for (int s : c.group_sizes) AppendVarint(out, static_cast<uint64_t>(s));
  AppendLE(out, c.upper_bound_e4, 2);
  AppendLE(out, c.step_e4, 2);
  AppendU8(out, c.precision);
  AppendU8(out, c.scale_table_id);
  AppendU8(out, static_cast<uint32_t>(c.hyper_sigma.size()));
  out.insert(out.end(), c.hyper_sigma.begin(), c.hyper_sigma.end());
  AppendVarint(out, c.hyper_stream.size());
  for (const auto& s : c.unit_streams) AppendVarint(out, s.size());
  AppendLE(out, c.symbol_crc, 4);
  out.insert(out.end(), c.hyper_stream.begin(), c.hyper_stream.end());
  for (const auto& s : c.unit_streams) out.insert(out.end(), s.begin(), s.end());
  AppendLE(out, Crc32(out), 4);
  return out;
}

Container ParseContainer(std::span<const uint8_t> bytes) {
  ByteReader r(bytes, ErrorCode::kTruncated);
  if (bytes.size() < 4 || !std::equal(kMagic, kMagic + 4, bytes.begin())) {
    BadContainer("not a LICB container");
  }
  r.ReadBytes(4);
  Container c;
  c.version = static_cast<int>(r.ReadLE(1));
  if (c.version > kContainerVersion) {
    throw Error(ErrorCode::kUnsupportedVersion,
                "container version " + std::to_string(c.version) +
                    " is newer than supported version " +
                    std::to_string(kContainerVersion));
  }
  if (c.version < 1) BadContainer("container version 0");
  const uint64_t width = r.ReadVarint();
  const uint64_t height = r.ReadVarint();
  if (width < 1 || height < 1 || width > kMaxDimension ||
      height > kMaxDimension) {
    BadContainer("image dimensions out of range");
  }
  c.width = static_cast<uint32_t>(width);
  c.height = static_cast<uint32_t>(height);
  c.model_hash = r.ReadLE(8);
  c.lambda_index = static_cast<int>(r.ReadLE(1));
  const int groups = static_cast<int>(r.ReadLE(1));
  if (groups < 1) BadContainer("container declares no channel groups");
  for (int g = 0; g < groups; ++g) {
    const uint64_t s = r.ReadVarint();
    if (s < 1 || s > 65535) BadContainer("group size out of range");
    c.group_sizes.push_back(static_cast<int>(s));
  }
  c.upper_bound_e4 = static_cast<uint16_t>(r.ReadLE(2));
  c.step_e4 = static_cast<uint16_t>(r.ReadLE(2));
  c.precision = static_cast<int>(r.ReadLE(1));
  if (c.precision < 8 || c.precision > 16) {
    BadContainer("entropy precision " + std::to_string(c.precision) +
                 " outside [8, 16]");
  }
  c.scale_table_id = static_cast<int>(r.ReadLE(1));
  const int hyper = static_cast<int>(r.ReadLE(1));
  const auto sigma = r.ReadBytes(hyper);
  c.hyper_sigma.assign(sigma.begin(), sigma.end());
  std::vector<uint64_t> lengths;
  for (int i = 0; i < 1 + 2 * groups; ++i) lengths.push_back(r.ReadVarint());
  c.symbol_crc = static_cast<uint32_t>(r.ReadLE(4));
  uint64_t declared = 4;
  for (uint64_t len : lengths) {
    if (len > bytes.size()) {
      throw Error(ErrorCode::kTruncated, "stream length exceeds container");
    }
    declared += len;
  }
  if (declared > r.remaining()) {
    throw Error(ErrorCode::kTruncated,
                "container declares " + std::to_string(declared) +
                    " more bytes, " + std::to_string(r.remaining()) +
                    " available");
  }
  if (declared < r.remaining()) {
    BadContainer(std::to_string(r.remaining() - declared) +
                 " trailing bytes after the checksum");
  }
  const uint32_t expected = Crc32(bytes.first(bytes.size() - 4));
  const auto stored_bytes = bytes.last(4);
  const uint32_t stored = static_cast<uint32_t>(stored_bytes[0]) |
                          static_cast<uint32_t>(stored_bytes[1]) << 8 |
                          static_cast<uint32_t>(stored_bytes[2]) << 16 |
                          static_cast<uint32_t>(stored_bytes[3]) << 24;
  if (stored != expected) {
    throw Error(ErrorCode::kChecksum, "container checksum mismatch");
  }
  const auto hyper_stream = r.ReadBytes(lengths[0]);
  c.hyper_stream.assign(hyper_stream.begin(), hyper_stream.end());
  for (int i = 0; i < 2 * groups; ++i) {
    const auto s = r.ReadBytes(lengths[1 + i]);
    c.unit_streams.emplace_back(s.begin(), s.end());
  }
  return c;
}

EncodeResult EncodeImage(const Image& image, const Model& model,
                         const CodecOptions& options) {
  const Architecture& arch = model.arch;
  EncodeResult result;
  Container& c = result.container;
  c.width = static_cast<uint32_t>(image.width);
  c.height = static_cast<uint32_t>(image.height);
  if (image.width < 1 || image.height < 1 ||
      c.width > kMaxDimension || c.height > kMaxDimension) {
    throw Error(ErrorCode::kConfig, "image dimensions out of range");
  }
  c.model_hash = model.hash;
  c.lambda_index = model.lambda_index;
  c.group_sizes = arch.groups.sizes();
  c.upper_bound_e4 = ToE4(options.upper_bound, "upper bound");
  c.step_e4 = ToE4(options.step, "quantization step");
  c.precision = options.coder.precision;
  const Session session(model, c, options.coder);
  c.scale_table_id = session.gc.scales().id();
  const GaussianConditional& gc = session.gc;
  const int half = gc.config().half_range;

  const Tensor x = ImageToTensor(image, arch.DownsamplingFactor());
  const Tensor y = RunChain(x, arch.Chain("g_a"), model.weights);
  if (!(y.shape() == session.latent)) {
    throw Error(ErrorCode::kConfig, "analysis produced " +
                                        y.shape().ToString() + ", expected " +
                                        session.latent.ToString());
  }

  // Hyper latent with a static per-channel model.
  Tensor z_hat = HyperAnalyze(y, arch, model.weights);
  for (float& v : z_hat.data()) {
    v = std::clamp(v, static_cast<float>(-half), static_cast<float>(half));
  }
  for (int ch = 0; ch < z_hat.shape().channels; ++ch) {
    double sum = 0.0;
    for (float v : z_hat.Plane(0, ch)) sum += static_cast<double>(v) * v;
    const double rms = std::sqrt(sum / static_cast<double>(z_hat.PlaneSize()));
    c.hyper_sigma.push_back(
        static_cast<uint8_t>(gc.scales().Quantize(gc.scales().Clamp(rms))));
  }
  {
    const std::vector<FrequencyTable> tables = session.HyperTables(c.hyper_sigma);
    std::vector<int64_t> symbols;
    for (size_t i = 0; i < z_hat.size(); ++i) {
      symbols.push_back(static_cast<int64_t>(z_hat.data()[i]));
      const int ch = static_cast<int>(i / z_hat.PlaneSize());
      result.hyper_bits += gc.SymbolBits(symbols.back(), 0.0,
                                         gc.scales()[c.hyper_sigma[ch]]);
    }
    c.hyper_stream = EncodeSymbols(symbols, tables).bytes;
  }

  const Tensor p = HyperSynthesize(z_hat, arch, model.weights);
  const ContextModel ctx(arch, model.weights, p);
  LatentState state(y.shape(), Schedule(arch.groups));
  const auto y_data = y.data();
  for (const CodingUnit& unit : state.schedule()) {
    UnitParams params = ctx.EntropyParameters(state, unit);
    const QuantizerConstants& q = session.quantizers[unit.group];
    std::vector<int64_t> residuals;
    std::vector<FrequencyTable> tables;
    residuals.reserve(params.indices.size());
    tables.reserve(params.indices.size());
    auto symbols = state.symbols().data();
    for (size_t i = 0; i < params.indices.size(); ++i) {
      const size_t idx = params.indices[i];
      SymbolModel m = gc.Model(params.mu[i], params.sigma[i]);
      const double warped = QuantizeValue(y_data[idx], q);
      // Out-of-range values saturate at the edge of the residual range.
      const double bounded =
          std::isnan(warped)
              ? 0.0
              : std::clamp(warped - static_cast<double>(m.center),
                           static_cast<double>(-half), static_cast<double>(half));
      const int64_t residual = static_cast<int64_t>(bounded);
      const int64_t coded = m.center + residual;
      symbols[idx] = static_cast<float>(coded);
      result.latent_bits += gc.SymbolBits(coded, params.mu[i], params.sigma[i]);
      residuals.push_back(residual);
      tables.push_back(std::move(m.table));
    }
    c.unit_streams.push_back(EncodeSymbols(residuals, tables).bytes);
    state.Complete(unit);
    result.unit_params.push_back(std::move(params));
  }

  c.symbol_crc = SymbolPlaneCrc(z_hat, state.symbols());
  result.bytes = SerializeContainer(c);
  result.y_hat = state.symbols();
  result.z_hat = std::move(z_hat);
  result.reconstruction = TensorToImage(session.Synthesize(result.y_hat),
                                        image.width, image.height);
  result.bpp = 8.0 * result.bytes.size() /
               (static_cast<double>(image.width) * image.height);
  result.payload_bpp = 8.0 * c.PayloadBytes() /
                       (static_cast<double>(image.width) * image.height);
  return result;
}

namespace {

// The container checksum already vouches for the stream bytes, so a
// desynchronized stream means the decoder's tables differ from the
// encoder's.
std::vector<int64_t> DecodeStream(const std::vector<uint8_t>& bytes,
                                  std::span<const FrequencyTable> tables,
                                  const std::string& what) {
  try {
    return DecodeSymbols(CodedStream{bytes, tables.size()}, tables);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kCoding && e.code() != ErrorCode::kTruncated) {
      throw;
    }
    throw Error(ErrorCode::kChecksum,
                what + " does not match its frequency tables: " + e.what());
  }
}

}  // namespace

DecodeResult DecodeImage(std::span<const uint8_t> bytes, const Model& model) {
  const Container c = ParseContainer(bytes);
  CheckCompatible(c, model);
  GaussianCoderConfig coder;
  coder.precision = c.precision;
  const Session session(model, c, coder);
  const GaussianConditional& gc = session.gc;
  if (c.scale_table_id != gc.scales().id()) {
    BadContainer("unknown scale table " + std::to_string(c.scale_table_id));
  }
  for (uint8_t idx : c.hyper_sigma) {
    if (idx >= gc.scales().size()) BadContainer("hyper sigma index out of range");
  }
  const Architecture& arch = model.arch;

  DecodeResult result;
  {
    const std::vector<FrequencyTable> tables = session.HyperTables(c.hyper_sigma);
    const std::vector<int64_t> symbols =
        DecodeStream(c.hyper_stream, tables, "hyper stream");
    Tensor z_hat(session.hyper);
    for (size_t i = 0; i < symbols.size(); ++i) {
      z_hat.data()[i] = static_cast<float>(symbols[i]);
    }
    result.z_hat = std::move(z_hat);
  }
  const Tensor p = HyperSynthesize(result.z_hat, arch, model.weights);
  const ContextModel ctx(arch, model.weights, p);
  LatentState state(session.latent, Schedule(arch.groups));
  for (const CodingUnit& unit : state.schedule()) {
    UnitParams params = ctx.EntropyParameters(state, unit);
    std::vector<int64_t> centers;
    std::vector<FrequencyTable> tables;
    centers.reserve(params.indices.size());
    tables.reserve(params.indices.size());
    for (size_t i = 0; i < params.indices.size(); ++i) {
      SymbolModel m = gc.Model(params.mu[i], params.sigma[i]);
      centers.push_back(m.center);
      tables.push_back(std::move(m.table));
    }
    const std::vector<int64_t> residuals =
        DecodeStream(c.unit_streams[unit.index], tables,
                     "unit " + std::to_string(unit.index) + " stream");
    auto symbols = state.symbols().data();
    for (size_t i = 0; i < residuals.size(); ++i) {
      symbols[params.indices[i]] = static_cast<float>(centers[i] + residuals[i]);
    }
    state.Complete(unit);
    result.unit_params.push_back(std::move(params));
  }
  result.y_hat = state.symbols();
  if (SymbolPlaneCrc(result.z_hat, result.y_hat) != c.symbol_crc) {
    throw Error(ErrorCode::kChecksum, "decoded symbols fail the symbol-plane "
                                      "checksum");
  }
  result.image = TensorToImage(session.Synthesize(result.y_hat),
                               static_cast<int>(c.width),
                               static_cast<int>(c.height));
  return result;
}

}  // namespace lic
