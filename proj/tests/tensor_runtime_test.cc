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

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "lic/architecture.h"
#include "lic/layers.h"
#include "lic/tensor.h"
#include "lic/weights.h"
#include "test_util.h"

namespace lic {
namespace {

using ::lic::testing::CodeOf;
using ::lic::testing::MakeConv;
using ::lic::testing::MakeDeconv;
using ::lic::testing::RandomTensor;
using ::lic::testing::TempDir;

void AddParams(WeightStore& store, const LayerSpec& spec, std::mt19937_64& rng,
               bool zero_bias = false) {
  store.Add(spec.WeightName(), RandomTensor(spec.WeightShape(), rng));
  store.Add(spec.BiasName(), zero_bias ? Tensor(spec.BiasShape())
                                       : RandomTensor(spec.BiasShape(), rng));
}

// Direct cross-correlation with zero padding, accumulated in double.
Tensor ConvOracle(const Tensor& in, const LayerSpec& s, const WeightStore& w) {
  const Tensor& k = w.Get(s.WeightName());
  const Tensor& b = w.Get(s.BiasName());
  const int oh = (in.shape().height + 2 * s.padding - s.kernel) / s.stride + 1;
  const int ow = (in.shape().width + 2 * s.padding - s.kernel) / s.stride + 1;
  Tensor out(Shape{in.shape().batch, s.out_channels, oh, ow});
  for (int n = 0; n < in.shape().batch; ++n)
    for (int co = 0; co < s.out_channels; ++co)
      for (int y = 0; y < oh; ++y)
        for (int x = 0; x < ow; ++x) {
          double acc = b.at(co, 0, 0, 0);
          for (int ci = 0; ci < s.in_channels; ++ci)
            for (int ky = 0; ky < s.kernel; ++ky)
              for (int kx = 0; kx < s.kernel; ++kx) {
                const int iy = y * s.stride + ky - s.padding;
                const int ix = x * s.stride + kx - s.padding;
                if (iy < 0 || ix < 0 || iy >= in.shape().height ||
                    ix >= in.shape().width)
                  continue;
                acc += static_cast<double>(k.at(co, ci, ky, kx)) *
                       in.at(n, ci, iy, ix);
              }
          out.at(n, co, y, x) = static_cast<float>(acc);
        }
  return out;
}

// Transposed convolution as a scatter of every input sample.
Tensor DeconvOracle(const Tensor& in, const LayerSpec& s,
                    const WeightStore& w) {
  const Tensor& k = w.Get(s.WeightName());
  const Tensor& b = w.Get(s.BiasName());
  const int oh = (in.shape().height - 1) * s.stride - 2 * s.padding + s.kernel;
  const int ow = (in.shape().width - 1) * s.stride - 2 * s.padding + s.kernel;
  std::vector<double> acc(static_cast<size_t>(in.shape().batch) *
                          s.out_channels * oh * ow);
  auto at = [&](int n, int c, int y, int x) -> double& {
    return acc[((static_cast<size_t>(n) * s.out_channels + c) * oh + y) * ow +
               x];
  };
  for (int n = 0; n < in.shape().batch; ++n)
    for (int co = 0; co < s.out_channels; ++co)
      for (int y = 0; y < oh; ++y)
        for (int x = 0; x < ow; ++x) at(n, co, y, x) = b.at(co, 0, 0, 0);
  for (int n = 0; n < in.shape().batch; ++n)
    for (int ci = 0; ci < s.in_channels; ++ci)
      for (int y = 0; y < in.shape().height; ++y)
        for (int x = 0; x < in.shape().width; ++x)
          for (int co = 0; co < s.out_channels; ++co)
            for (int ky = 0; ky < s.kernel; ++ky)
              for (int kx = 0; kx < s.kernel; ++kx) {
                const int oy = y * s.stride + ky - s.padding;
                const int ox = x * s.stride + kx - s.padding;
                if (oy < 0 || ox < 0 || oy >= oh || ox >= ow) continue;
                at(n, co, oy, ox) += static_cast<double>(in.at(n, ci, y, x)) *
                                     k.at(ci, co, ky, kx);
              }
  Tensor out(Shape{in.shape().batch, s.out_channels, oh, ow});
  for (size_t i = 0; i < acc.size(); ++i) out.data()[i] = static_cast<float>(acc[i]);
  return out;
}

double Dot(const Tensor& a, const Tensor& b) {
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    sum += static_cast<double>(a.data()[i]) * b.data()[i];
  }
  return sum;
}

TEST(TensorTest, RejectsLengthMismatchAndZeroDims) {
  EXPECT_EQ(CodeOf([] { Tensor(Shape{1, 2, 2, 2}, std::vector<float>(7)); }),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([] { Tensor(Shape{1, 0, 2, 2}); }), ErrorCode::kConfig);
}

TEST(TensorTest, ConcatAndSliceAreInverse) {
  std::mt19937_64 rng(1);
  const Tensor a = RandomTensor(Shape{1, 2, 3, 4}, rng);
  const Tensor b = RandomTensor(Shape{1, 3, 3, 4}, rng);
  const Tensor* parts[] = {&a, &b};
  const Tensor cat = ConcatChannels(parts);
  EXPECT_EQ(cat.shape(), (Shape{1, 5, 3, 4}));
  EXPECT_TRUE(SliceChannels(cat, 0, 2).BitwiseEquals(a));
  EXPECT_TRUE(SliceChannels(cat, 2, 5).BitwiseEquals(b));
}

TEST(Conv2dTest, ZeroInputZeroBiasGivesZero) {
  std::mt19937_64 rng(2);
  const LayerSpec spec = MakeConv("c", 1, 2, 3, 1, 1);
  WeightStore w;
  AddParams(w, spec, rng, /*zero_bias=*/true);
  const Tensor out = Conv2d(Tensor(Shape{1, 1, 3, 3}), spec, w);
  for (float v : out.data()) EXPECT_EQ(v, 0.0f);
}

TEST(Conv2dTest, ScalarAffine) {
  const LayerSpec spec = MakeConv("c", 1, 1, 1);
  WeightStore w;
  w.Add("c.weight", Tensor(Shape{1, 1, 1, 1}, std::vector<float>{3.0f}));
  w.Add("c.bias", Tensor(Shape{1, 1, 1, 1}, std::vector<float>{1.0f}));
  const Tensor out =
      Conv2d(Tensor(Shape{1, 1, 1, 1}, std::vector<float>{2.0f}), spec, w);
  EXPECT_EQ(out.data()[0], 7.0f);
}

TEST(Conv2dTest, ImpulseGivesMirroredKernel) {
  const LayerSpec spec = MakeConv("c", 1, 1, 3, 1, 1);
  WeightStore w;
  std::vector<float> k = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  w.Add("c.weight", Tensor(Shape{1, 1, 3, 3}, k));
  w.Add("c.bias", Tensor(Shape{1, 1, 1, 1}));
  Tensor impulse(Shape{1, 1, 3, 3});
  impulse.at(0, 0, 1, 1) = 1.0f;
  const Tensor out = Conv2d(impulse, spec, w);
  for (int y = 0; y < 3; ++y) {
    for (int x = 0; x < 3; ++x) {
      EXPECT_EQ(out.at(0, 0, y, x), k[(2 - y) * 3 + (2 - x)]);
    }
  }
}

TEST(Conv2dTest, MatchesDirectOracle) {
  std::mt19937_64 rng(3);
  for (const LayerSpec& spec :
       {MakeConv("a", 3, 4, 5, 2, 2), MakeConv("b", 2, 3, 3, 1, 1),
        MakeConv("c", 4, 2, 1, 1, 0), MakeConv("d", 2, 2, 3, 2, 0)}) {
    WeightStore w;
    AddParams(w, spec, rng);
    const Tensor in = RandomTensor(Shape{2, spec.in_channels, 9, 7}, rng);
    const Tensor got = Conv2d(in, spec, w);
    const Tensor want = ConvOracle(in, spec, w);
    ASSERT_EQ(got.shape(), want.shape()) << spec.name;
    for (size_t i = 0; i < got.size(); ++i) {
      EXPECT_NEAR(got.data()[i], want.data()[i], 1e-5) << spec.name;
    }
  }
}

TEST(Conv2dTest, ErrorsNameTheParameter) {
  const LayerSpec spec = MakeConv("g_a.0", 2, 3, 3, 1, 1);
  WeightStore w;
  w.Add("g_a.0.weight", Tensor(Shape{3, 1, 3, 3}));
  w.Add("g_a.0.bias", Tensor(Shape{3, 1, 1, 1}));
  try {
    Conv2d(Tensor(Shape{1, 2, 4, 4}), spec, w);
    FAIL() << "expected shape error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
    EXPECT_NE(std::string(e.what()).find("g_a.0.weight"), std::string::npos);
  }
  WeightStore missing;
  try {
    Conv2d(Tensor(Shape{1, 2, 4, 4}), spec, missing);
    FAIL() << "expected missing-parameter error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
    EXPECT_NE(std::string(e.what()).find("g_a.0.weight"), std::string::npos);
  }
  EXPECT_EQ(CodeOf([&] { Conv2d(Tensor(Shape{1, 1, 4, 4}), spec, w); }),
            ErrorCode::kConfig);
}

TEST(Conv2dTest, RejectsEmptyOutput) {
  const LayerSpec spec = MakeConv("c", 1, 1, 5, 1, 0);
  EXPECT_EQ(CodeOf([&] { spec.OutputDims(3, 3); }), ErrorCode::kConfig);
}

TEST(Conv2dTest, BitReproducible) {
  std::mt19937_64 rng(4);
  const LayerSpec spec = MakeConv("c", 3, 8, 5, 2, 2);
  WeightStore w;
  AddParams(w, spec, rng);
  const Tensor in = RandomTensor(Shape{1, 3, 16, 16}, rng);
  EXPECT_TRUE(Conv2d(in, spec, w).BitwiseEquals(Conv2d(in, spec, w)));
}

TEST(Deconv2dTest, ZeroInputZeroOutput) {
  std::mt19937_64 rng(5);
  const LayerSpec spec = MakeDeconv("d", 2, 3, 4, 2, 1);
  WeightStore w;
  AddParams(w, spec, rng, true);
  const Tensor out = Deconv2d(Tensor(Shape{1, 2, 3, 3}), spec, w);
  EXPECT_EQ(out.shape(), (Shape{1, 3, 6, 6}));
  for (float v : out.data()) EXPECT_EQ(v, 0.0f);
}

TEST(Deconv2dTest, SingleSampleStampsKernel) {
  const LayerSpec spec = MakeDeconv("d", 1, 1, 2, 2, 0);
  WeightStore w;
  w.Add("d.weight", Tensor(Shape{1, 1, 2, 2}, std::vector<float>{1, 2, 3, 4}));
  w.Add("d.bias", Tensor(Shape{1, 1, 1, 1}));
  const Tensor out =
      Deconv2d(Tensor(Shape{1, 1, 1, 1}, std::vector<float>{1.0f}), spec, w);
  ASSERT_EQ(out.shape(), (Shape{1, 1, 2, 2}));
  EXPECT_EQ(out.at(0, 0, 0, 0), 1.0f);
  EXPECT_EQ(out.at(0, 0, 0, 1), 2.0f);
  EXPECT_EQ(out.at(0, 0, 1, 0), 3.0f);
  EXPECT_EQ(out.at(0, 0, 1, 1), 4.0f);
}

TEST(Deconv2dTest, MatchesScatterOracle) {
  std::mt19937_64 rng(6);
  for (const LayerSpec& spec :
       {MakeDeconv("a", 3, 2, 4, 2, 1), MakeDeconv("b", 2, 3, 3, 1, 1),
        MakeDeconv("c", 2, 2, 5, 2, 2), MakeDeconv("d", 1, 2, 3, 3, 0)}) {
    WeightStore w;
    AddParams(w, spec, rng);
    const Tensor in = RandomTensor(Shape{2, spec.in_channels, 5, 4}, rng);
    const Tensor got = Deconv2d(in, spec, w);
    const Tensor want = DeconvOracle(in, spec, w);
    ASSERT_EQ(got.shape(), want.shape()) << spec.name;
    for (size_t i = 0; i < got.size(); ++i) {
      EXPECT_NEAR(got.data()[i], want.data()[i], 1e-5) << spec.name;
    }
  }
}

// <conv(x), y> = <x, deconv(y)> when both layers share one weight tensor and
// the spatial sizes round-trip.
TEST(Deconv2dTest, AdjointOfConv) {
  std::mt19937_64 rng(7);
  struct Case { int cin, cout, k, s, p, h, w; };
  for (const Case& c : {Case{2, 3, 3, 1, 1, 4, 4}, Case{3, 2, 5, 2, 2, 5, 5},
                        Case{1, 4, 3, 2, 1, 5, 5}, Case{2, 2, 1, 1, 0, 4, 4}}) {
    const LayerSpec conv = MakeConv("x", c.cin, c.cout, c.k, c.s, c.p);
    const LayerSpec deconv = MakeDeconv("xt", c.cout, c.cin, c.k, c.s, c.p);
    WeightStore w;
    AddParams(w, conv, rng, true);  // (cout, cin, k, k) serves both layers
    w.Add(deconv.WeightName(), w.Get(conv.WeightName()));
    w.Add(deconv.BiasName(), Tensor(deconv.BiasShape()));
    const Tensor x = RandomTensor(Shape{1, c.cin, c.h, c.w}, rng);
    const Tensor cx = Conv2d(x, conv, w);
    const Tensor y = RandomTensor(cx.shape(), rng);
    const Tensor dy = Deconv2d(y, deconv, w);
    ASSERT_EQ(dy.shape(), x.shape());
    EXPECT_NEAR(Dot(cx, y), Dot(x, dy), 1e-4);
  }
}

TEST(ReluTest, ClampsNegatives) {
  const Tensor in(Shape{1, 3, 1, 1}, std::vector<float>{-1, 0, 2});
  const Tensor out = Relu(in);
  EXPECT_EQ(out.data()[0], 0.0f);
  EXPECT_EQ(out.data()[1], 0.0f);
  EXPECT_EQ(out.data()[2], 2.0f);
  std::mt19937_64 rng(8);
  const Tensor neg = RandomTensor(Shape{1, 2, 3, 3}, rng, -5.0, -0.1);
  const Tensor clamped = Relu(neg);
  for (float v : clamped.data()) EXPECT_EQ(v, 0.0f);
  const Tensor t = RandomTensor(Shape{1, 2, 3, 3}, rng);
  EXPECT_TRUE(Relu(Relu(t)).BitwiseEquals(Relu(t)));
}

TEST(ChannelSoftmaxTest, ClosedForms) {
  const Tensor equal(Shape{1, 2, 1, 1}, std::vector<float>{0.7f, 0.7f});
  const Tensor e = ChannelSoftmax(equal);
  EXPECT_NEAR(e.data()[0], 0.5, 1e-7);
  EXPECT_NEAR(e.data()[1], 0.5, 1e-7);
  const Tensor ln3(Shape{1, 2, 1, 1},
                   std::vector<float>{0.0f, static_cast<float>(std::log(3.0))});
  const Tensor l = ChannelSoftmax(ln3);
  EXPECT_NEAR(l.data()[0], 0.25, 1e-6);
  EXPECT_NEAR(l.data()[1], 0.75, 1e-6);
}

TEST(ChannelSoftmaxTest, NormalizedAndShiftInvariant) {
  std::mt19937_64 rng(9);
  Tensor t = RandomTensor(Shape{2, 7, 4, 5}, rng, -30.0, 30.0);
  // Multiples of 2^-10 so the shift below is exact in float.
  for (float& v : t.data()) v = std::round(v * 1024.0f) / 1024.0f;
  const Tensor s = ChannelSoftmax(t);
  Tensor shifted = t;
  for (float& v : shifted.data()) v += 100.0f;
  const Tensor s2 = ChannelSoftmax(shifted);
  for (int n = 0; n < 2; ++n)
    for (int y = 0; y < 4; ++y)
      for (int x = 0; x < 5; ++x) {
        double sum = 0.0;
        for (int c = 0; c < 7; ++c) {
          EXPECT_GT(s.at(n, c, y, x), 0.0f);
          sum += s.at(n, c, y, x);
        }
        EXPECT_NEAR(sum, 1.0, 1e-6);
      }
  for (size_t i = 0; i < s.size(); ++i) {
    EXPECT_EQ(s.data()[i], s2.data()[i]);
  }
}

TEST(WeightsTest, EmptyFileIsEmptyStore) {
  EXPECT_EQ(ParseWeights({}).size(), 0u);
}

TEST(WeightsTest, LengthMismatchIsRejected) {
  std::string text = "LICW 1\ng_a.0.weight 2 4 1 12\n";
  text.append(48, '\0');
  const std::vector<uint8_t> bytes(text.begin(), text.end());
  try {
    ParseWeights(bytes);
    FAIL() << "expected length mismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformed);
    EXPECT_NE(std::string(e.what()).find("length mismatch"), std::string::npos);
  }
}

TEST(WeightsTest, DuplicateAndMalformedRecords) {
  WeightStore store;
  store.Add("a", Tensor(Shape{1, 1, 1, 1}));
  EXPECT_EQ(CodeOf([&] { store.Add("a", Tensor()); }), ErrorCode::kMalformed);
  std::string text = "LICW 1\na 1 1 1\n";
  text.append(4, '\0');
  text += "a 1 1 1\n";
  text.append(4, '\0');
  const std::vector<uint8_t> dup(text.begin(), text.end());
  EXPECT_EQ(CodeOf([&] { ParseWeights(dup); }), ErrorCode::kMalformed);
  const std::string bad = "NOPE\n";
  EXPECT_EQ(CodeOf([&] {
              ParseWeights(std::vector<uint8_t>(bad.begin(), bad.end()));
            }),
            ErrorCode::kMalformed);
  const std::string truncated = "LICW 1\na 1 2 2\nxyz";
  EXPECT_EQ(CodeOf([&] {
              ParseWeights(
                  std::vector<uint8_t>(truncated.begin(), truncated.end()));
            }),
            ErrorCode::kMalformed);
}

TEST(WeightsTest, SaveLoadRoundTripIsBitExact) {
  std::mt19937_64 rng(10);
  WeightStore store;
  store.Add("g_a.0.weight", RandomTensor(Shape{4, 3, 5, 5}, rng));
  store.Add("g_a.0.bias", RandomTensor(Shape{4, 1, 1, 1}, rng));
  Tensor special(Shape{1, 1, 1, 4},
                 std::vector<float>{-0.0f, 1e-45f, 3.4e38f, -2.5f});
  store.Add("odd", special);
  TempDir dir("weights");
  SaveWeights(store, dir.path() / "w.lw");
  const WeightStore loaded = LoadWeights(dir.path() / "w.lw");
  ASSERT_EQ(loaded.size(), store.size());
  for (const auto& [name, tensor] : store.entries()) {
    ASSERT_TRUE(loaded.Contains(name)) << name;
    EXPECT_EQ(loaded.Get(name).shape(), tensor.shape()) << name;
    EXPECT_TRUE(loaded.Get(name).BitwiseEquals(tensor)) << name;
  }
  EXPECT_EQ(SerializeWeights(loaded), SerializeWeights(store));
}

TEST(WeightsTest, MissingFileIsIoError) {
  EXPECT_EQ(CodeOf([] { LoadWeights("/nonexistent/dir/w.lw"); }),
            ErrorCode::kIo);
}

TEST(FlopsTest, SpotCounts) {
  const LayerSpec one = MakeConv("g_a.0", 1, 1, 1);
  EXPECT_EQ(EstimateChain(std::span<const LayerSpec>(&one, 1), 1, 1, 1).macs,
            1u);
  const LayerSpec conv = MakeConv("g_a.0", 2, 4, 3, 1, 1);
  EXPECT_EQ(EstimateChain(std::span<const LayerSpec>(&conv, 1), 2, 8, 8).macs,
            2u * 4 * 9 * 64);
}

TEST(FlopsTest, AdditiveOverChains) {
  const std::vector<LayerSpec> chain = {MakeConv("g_a.0", 3, 8, 5, 2, 2),
                                        LayerSpec{"g_a.1", LayerKind::kRelu},
                                        MakeConv("g_a.2", 8, 6, 3, 2, 1)};
  const ChainCost whole = EstimateChain(chain, 3, 32, 32);
  const ChainCost first =
      EstimateChain(std::span<const LayerSpec>(chain).first(2), 3, 32, 32);
  const ChainCost rest = EstimateChain(std::span<const LayerSpec>(chain).last(1),
                                       first.channels, first.height,
                                       first.width);
  EXPECT_EQ(whole.macs, first.macs + rest.macs);
  EXPECT_EQ(whole.macs, 16u * 16 * 3 * 8 * 25 + 8u * 8 * 8 * 6 * 9);
}

TEST(FlopsTest, InconsistentChainIsConfigError) {
  const std::vector<LayerSpec> chain = {MakeConv("g_a.0", 3, 8, 3, 1, 1),
                                        MakeConv("g_a.1", 4, 8, 3, 1, 1)};
  EXPECT_EQ(CodeOf([&] { EstimateChain(chain, 3, 8, 8); }), ErrorCode::kConfig);
  const std::vector<LayerSpec> unknown = {MakeConv("foo.0", 3, 8, 3, 1, 1)};
  EXPECT_EQ(CodeOf([&] { EstimateFlops(unknown, 8, 8); }), ErrorCode::kConfig);
}

}  // namespace
}  // namespace lic
