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

#include <sstream>
#include <string>

#include "commands.h"
#include "gtest/gtest.h"
#include "lic/image.h"
#include "lic/metrics.h"
#include "lic/toy_model.h"
#include "test_util.h"

namespace lic {
namespace {

using ::lic::testing::CodeOf;
using ::lic::testing::RandomImage;
using ::lic::testing::TempDir;

int CountLines(const std::string& s) {
  return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

TEST(CliTest, QuantizerTableRows) {
  std::ostringstream out;
  cli::QuantizerTableOptions o;
  cli::RunQuantizerTable(o, out);
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, 12), "k,bias,a,b,c");
  EXPECT_EQ(CountLines(text), 14);
  EXPECT_NE(text.find("\n0,0.5,"), std::string::npos);
}

TEST(CliTest, QuantizerTableStopsAtInvalidGroup) {
  std::ostringstream out;
  cli::QuantizerTableOptions o;
  o.max_group = 13;
  EXPECT_EQ(CodeOf([&] { cli::RunQuantizerTable(o, out); }),
            ErrorCode::kInvalidGroup);
  EXPECT_EQ(CountLines(out.str()), 14);  // header plus k = 0..12
}

TEST(CliTest, EvalOfIdenticalCurvesIsZero) {
  TempDir dir("eval");
  const RdCurve curve{"x", {{0.1, 28.0}, {0.2, 30.0}, {0.4, 32.5}, {0.8, 35.0}}};
  WriteRdCsv(std::vector<RdCurve>{curve}, dir.path() / "a.csv");
  cli::EvalOptions o;
  o.rd_input = (dir.path() / "a.csv").string();
  o.anchor = o.rd_input;
  std::ostringstream out;
  cli::RunEval(o, out);
  EXPECT_NE(out.str().find("BD-RATE(%)"), std::string::npos);
  EXPECT_NE(out.str().find("0.0000       0.0000"), std::string::npos) << out.str();
}

TEST(CliTest, EvalNeedsAnInput) {
  std::ostringstream out;
  EXPECT_EQ(CodeOf([&] { cli::RunEval(cli::EvalOptions{}, out); }),
            ErrorCode::kConfig);
}

TEST(CliTest, FlopsSweepReportsRatio) {
  std::ostringstream out;
  cli::RunFlops(cli::FlopsOptions{}, out);
  const std::string text = out.str();
  EXPECT_NE(text.find("GFLOPs at 1920x1080"), std::string::npos);
  EXPECT_NE(text.find("hyper context ratio(%)"), std::string::npos);
  EXPECT_NE(text.find("1280"), std::string::npos);
}

TEST(CliTest, EncodeDecodeFiles) {
  TempDir dir("cli");
  cli::ToyModelOptions toy;
  toy.output = (dir.path() / "models").string();
  std::ostringstream log;
  cli::RunToyModel(toy, log);

  std::mt19937_64 rng(1);
  WritePng(RandomImage(40, 24, rng), dir.path() / "in.png");
  cli::EncodeOptions enc;
  enc.input = (dir.path() / "in.png").string();
  enc.output = (dir.path() / "a.licb").string();
  enc.model_dir = toy.output;
  enc.lambda_index = 2;
  cli::RunEncode(enc, log);

  cli::DecodeOptions dec;
  dec.input = enc.output;
  dec.output = (dir.path() / "out.png").string();
  dec.model_dir = toy.output;
  cli::RunDecode(dec, log);
  const Image decoded = ReadPng(dec.output);
  EXPECT_EQ(decoded.width, 40);
  EXPECT_EQ(decoded.height, 24);

  dec.lambda_index = 0;
  EXPECT_EQ(CodeOf([&] { cli::RunDecode(dec, log); }),
            ErrorCode::kModelMismatch);
}

}  // namespace
}  // namespace lic
