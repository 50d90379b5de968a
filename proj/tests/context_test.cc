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
#include <set>

#include "gtest/gtest.h"
#include "lic/context.h"
#include "lic/layers.h"
#include "lic/toy_model.h"
#include "test_util.h"

namespace lic {
namespace {

using ::lic::testing::CodeOf;
using ::lic::testing::RandomTensor;

class ToyFixture : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    arch_ = new Architecture(MakeToyArchitecture(ToyConfig{}));
    weights_ = new WeightStore(MakeToyWeights(*arch_, 7, 1.5));
  }
  static void TearDownTestSuite() {
    delete weights_;
    delete arch_;
  }

  static Architecture* arch_;
  static WeightStore* weights_;
};

Architecture* ToyFixture::arch_ = nullptr;
WeightStore* ToyFixture::weights_ = nullptr;

// Random integer symbols in [-4, 4].
Tensor RandomSymbols(const Shape& shape, std::mt19937_64& rng) {
  Tensor t(shape);
  for (float& v : t.data()) v = static_cast<float>(static_cast<int>(rng() % 9) - 4);
  return t;
}

TEST(ScheduleTest, TwoUnitsPerGroupInOrder) {
  const GroupPlan plan = GroupPlan::Default(40);
  const std::vector<CodingUnit> units = Schedule(plan);
  ASSERT_EQ(units.size(), 10u);
  for (size_t i = 0; i < units.size(); ++i) {
    EXPECT_EQ(units[i].index, static_cast<int>(i));
    EXPECT_EQ(units[i].group, static_cast<int>(i / 2));
    EXPECT_EQ(units[i].phase, i % 2 == 0 ? Phase::kAnchor : Phase::kNonAnchor);
    EXPECT_EQ(units[i].channel_begin, plan.offset(units[i].group));
    EXPECT_EQ(units[i].channel_end - units[i].channel_begin,
              plan.size(units[i].group));
  }
}

TEST(ScheduleTest, UnitsPartitionTheLatent) {
  const GroupPlan plan({3, 1, 5});
  const Shape latent{1, 9, 3, 5};
  std::vector<int> hits(latent.size(), 0);
  for (const CodingUnit& unit : Schedule(plan)) {
    const std::vector<size_t> elements = UnitElements(unit, latent);
    EXPECT_EQ(elements.size(), static_cast<size_t>(unit.mask().Count(3, 5)) *
                                   (unit.channel_end - unit.channel_begin));
    for (size_t e : elements) {
      ++hits[e];
      const int c = static_cast<int>(e / 15);
      const int y = static_cast<int>(e % 15) / 5;
      const int x = static_cast<int>(e % 5);
      EXPECT_TRUE(unit.Contains(c, y, x));
    }
  }
  for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(ScheduleTest, MaskCounts) {
  const CheckerboardMask anchor{Phase::kAnchor};
  const CheckerboardMask nonanchor{Phase::kNonAnchor};
  EXPECT_EQ(anchor.Count(3, 5), 8);
  EXPECT_EQ(nonanchor.Count(3, 5), 7);
  EXPECT_EQ(anchor.Count(4, 4), 8);
  EXPECT_EQ(nonanchor.Count(4, 4), 8);
  EXPECT_EQ(anchor.Count(1, 1), 1);
  EXPECT_EQ(nonanchor.Count(1, 1), 0);
  EXPECT_TRUE(anchor.Contains(0, 0));
  EXPECT_FALSE(anchor.Contains(0, 1));
  EXPECT_TRUE(nonanchor.Contains(1, 0));
}

TEST(ScheduleTest, SingleCellGridHasEmptyNonAnchorUnits) {
  const GroupPlan plan({1, 2});
  const std::vector<CodingUnit> units = Schedule(plan);
  ASSERT_EQ(units.size(), 4u);
  const Shape latent{1, 3, 1, 1};
  EXPECT_EQ(UnitElements(units[0], latent).size(), 1u);
  EXPECT_TRUE(UnitElements(units[1], latent).empty());
  EXPECT_EQ(UnitElements(units[2], latent).size(), 2u);
  EXPECT_TRUE(UnitElements(units[3], latent).empty());
}

TEST(ScheduleTest, OutOfOrderCompletionIsRejected) {
  const std::vector<CodingUnit> units = Schedule(GroupPlan({2, 2}));
  LatentState state(Shape{1, 4, 2, 2}, units);
  EXPECT_EQ(CodeOf([&] { state.Complete(units[1]); }), ErrorCode::kScheduling);
  state.Complete(units[0]);
  EXPECT_EQ(CodeOf([&] { state.Complete(units[0]); }), ErrorCode::kScheduling);
  state.Complete(units[1]);
  EXPECT_EQ(state.completed(), 2);
}

TEST_F(ToyFixture, HyperShapes) {
  std::mt19937_64 rng(1);
  const Tensor y = RandomTensor(Shape{1, 40, 8, 12}, rng, -3.0, 3.0);
  const Tensor z = HyperAnalyze(y, *arch_, *weights_);
  EXPECT_EQ(z.shape(), (Shape{1, 4, 2, 3}));
  for (float v : z.data()) EXPECT_EQ(v, std::round(v));
  const Tensor p = HyperSynthesize(z, *arch_, *weights_);
  EXPECT_EQ(p.shape(), (Shape{1, 80, 8, 12}));
  EXPECT_EQ(CodeOf([&] { HyperAnalyze(p, *arch_, *weights_); }),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([&] { HyperSynthesize(y, *arch_, *weights_); }),
            ErrorCode::kConfig);
}

TEST_F(ToyFixture, ContextModelChecksHyperWidth) {
  EXPECT_EQ(CodeOf([&] {
              ContextModel(*arch_, *weights_, Tensor(Shape{1, 40, 2, 2}));
            }),
            ErrorCode::kConfig);
}

TEST_F(ToyFixture, FirstUnitSeesOnlyHyperFeatures) {
  std::mt19937_64 rng(2);
  const Shape ls{1, 40, 4, 4};
  const Tensor p = RandomTensor(Shape{1, 80, 4, 4}, rng);
  const ContextModel model(*arch_, *weights_, p);
  const std::vector<CodingUnit> units = Schedule(arch_->groups);
  LatentState state(ls, units);
  state.symbols() = RandomSymbols(ls, rng);
  const Tensor input = model.ContextInput(state, units[0]);
  ASSERT_EQ(input.shape().channels, arch_->ContextInputChannels(0));
  for (int c = 0; c < input.shape().channels; ++c) {
    for (int y = 0; y < 4; ++y) {
      for (int x = 0; x < 4; ++x) {
        const float expected = c < 80 ? p.at(0, c, y, x) : 0.0f;
        EXPECT_EQ(input.at(0, c, y, x), expected);
      }
    }
  }
}

TEST_F(ToyFixture, NonAnchorInputCarriesAnchorsAndEarlierGroups) {
  std::mt19937_64 rng(3);
  const Shape ls{1, 40, 3, 4};
  const Tensor p = RandomTensor(Shape{1, 80, 3, 4}, rng);
  const ContextModel model(*arch_, *weights_, p);
  const std::vector<CodingUnit> units = Schedule(arch_->groups);
  LatentState state(ls, units);
  state.symbols() = RandomSymbols(ls, rng);
  for (int i = 0; i < 5; ++i) state.Complete(units[i]);
  const CodingUnit& unit = units[5];  // group 2, non-anchor
  const Tensor input = model.ContextInput(state, unit);
  const int offset = arch_->groups.offset(2);
  const int size = arch_->groups.size(2);
  ASSERT_EQ(input.shape().channels, 80 + offset + size);
  for (int c = 0; c < offset + size; ++c) {
    for (int y = 0; y < 3; ++y) {
      for (int x = 0; x < 4; ++x) {
        const float s = state.symbols().at(0, c, y, x);
        const float expected = c < offset || IsAnchor(y, x) ? s : 0.0f;
        EXPECT_EQ(input.at(0, 80 + c, y, x), expected) << c << " " << y << x;
      }
    }
  }
}

TEST_F(ToyFixture, ContextBeforeCompletionIsRejected) {
  const Shape ls{1, 40, 2, 2};
  const ContextModel model(*arch_, *weights_, Tensor(Shape{1, 80, 2, 2}));
  const std::vector<CodingUnit> units = Schedule(arch_->groups);
  LatentState state(ls, units);
  state.Complete(units[0]);
  EXPECT_NO_THROW(model.ContextInput(state, units[1]));
  EXPECT_EQ(CodeOf([&] { model.EntropyParameters(state, units[2]); }),
            ErrorCode::kScheduling);
}

TEST_F(ToyFixture, ParametersAreCausal) {
  std::mt19937_64 rng(4);
  const Shape ls{1, 40, 4, 6};
  const ContextModel model(*arch_, *weights_,
                           RandomTensor(Shape{1, 80, 4, 6}, rng));
  const std::vector<CodingUnit> units = Schedule(arch_->groups);
  const Tensor symbols = RandomSymbols(ls, rng);
  for (const CodingUnit& unit : units) {
    LatentState a(ls, units);
    LatentState b(ls, units);
    a.symbols() = symbols;
    b.symbols() = symbols;
    // Perturb every element of this unit and of every later unit.
    for (size_t u = unit.index; u < units.size(); ++u) {
      for (size_t e : UnitElements(units[u], ls)) {
        b.symbols().data()[e] += static_cast<float>(1 + rng() % 5);
      }
    }
    for (int i = 0; i < unit.index; ++i) {
      a.Complete(units[i]);
      b.Complete(units[i]);
    }
    const UnitParams pa = model.EntropyParameters(a, unit);
    const UnitParams pb = model.EntropyParameters(b, unit);
    EXPECT_EQ(pa.indices, pb.indices);
    EXPECT_EQ(pa.mu, pb.mu) << "unit " << unit.index;
    EXPECT_EQ(pa.sigma, pb.sigma) << "unit " << unit.index;
  }
}

TEST_F(ToyFixture, HeadSplitsIntoMeanAndLogScale) {
  WeightStore weights = *weights_;
  const LayerSpec last = arch_->Chain("ctx.g1.head").back();
  ASSERT_EQ(last.out_channels, 4);
  weights.Set(last.WeightName(), Tensor(last.WeightShape()));
  weights.Set(last.BiasName(),
              Tensor(last.BiasShape(), {1.5f, -2.0f, 0.0f, std::log(3.0f)}));
  const Shape ls{1, 40, 2, 3};
  std::mt19937_64 rng(5);
  const ContextModel model(*arch_, weights,
                           RandomTensor(Shape{1, 80, 2, 3}, rng));
  const std::vector<CodingUnit> units = Schedule(arch_->groups);
  LatentState state(ls, units);
  for (int i = 0; i < 3; ++i) state.Complete(units[i]);
  const UnitParams params = model.EntropyParameters(state, units[3]);
  ASSERT_EQ(params.indices.size(), 6u);  // 2 channels x 3 non-anchors
  for (size_t i = 0; i < params.indices.size(); ++i) {
    const int c = static_cast<int>(params.indices[i] / 6) - 2;
    EXPECT_EQ(params.mu[i], c == 0 ? 1.5f : -2.0f);
    EXPECT_FLOAT_EQ(params.sigma[i], c == 0 ? 1.0f : 3.0f);
  }
}

TEST_F(ToyFixture, AttentionIsAChannelDistribution) {
  std::mt19937_64 rng(6);
  const int c_in = arch_->ContextInputChannels(3);
  const Tensor features = RandomTensor(Shape{1, c_in, 3, 3}, rng, -2.0, 2.0);
  const Tensor attn = RunChain(features, arch_->Chain("ctx.g3.attn"), *weights_);
  ASSERT_EQ(attn.shape(), features.shape());
  for (int y = 0; y < 3; ++y) {
    for (int x = 0; x < 3; ++x) {
      double sum = 0.0;
      for (int c = 0; c < c_in; ++c) {
        EXPECT_GT(attn.at(0, c, y, x), 0.0f);
        sum += attn.at(0, c, y, x);
      }
      EXPECT_NEAR(sum, 1.0, 1e-5);
    }
  }
}

TEST_F(ToyFixture, IdentityBranchWithUniformAttentionAverages) {
  WeightStore weights = *weights_;
  const LayerSpec branch = arch_->Layer("ctx.g0.branch");
  const int c_in = branch.in_channels;
  Tensor w(branch.WeightShape());
  const int k = branch.kernel;
  for (int c = 0; c < c_in; ++c) w.at(c, c, k / 2, k / 2) = 1.0f;
  weights.Set(branch.WeightName(), w);
  weights.Set(branch.BiasName(), Tensor(branch.BiasShape()));
  const LayerSpec attn_out = arch_->Chain("ctx.g0.attn")[2];
  weights.Set(attn_out.WeightName(), Tensor(attn_out.WeightShape()));
  weights.Set(attn_out.BiasName(), Tensor(attn_out.BiasShape()));
  std::mt19937_64 rng(7);
  const Tensor features = RandomTensor(Shape{1, c_in, 4, 4}, rng);
  const Tensor out = ChannAttenBlock(features, *arch_, weights, 0);
  for (size_t i = 0; i < out.size(); ++i) {
    EXPECT_NEAR(out.data()[i], features.data()[i] / c_in, 1e-7);
  }
}

}  // namespace
}  // namespace lic
