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

#ifndef LIC_TOOLS_COMMANDS_H_
#define LIC_TOOLS_COMMANDS_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace lic::cli {

struct EncodeOptions {
  std::string input;
  std::string output;
  std::string model_dir;
  int lambda_index = 0;
  double step = 0.04;
  double upper_bound = 0.5;
};

struct DecodeOptions {
  std::string input;
  std::string output;
  std::string model_dir;
  int lambda_index = -1;  // -1: take the index recorded in the container
};

struct EvalOptions {
  std::string dataset;  // glob(3) pattern of PNG files
  std::string rd_input;  // existing RD CSV instead of coding a dataset
  std::string model_dir;
  std::vector<int> lambdas;  // empty: every model in the directory
  std::string label = "lic";
  std::string anchor;  // RD CSV with anchor curves
  std::string output;  // RD CSV destination; empty: none
  double step = 0.04;
  double upper_bound = 0.5;
  int jobs = 1;
};

struct QuantizerTableOptions {
  double step = 0.04;
  double upper_bound = 0.5;
  int max_group = 12;
};

struct FlopsOptions {
  std::string arch;  // architecture file; empty: toy sweep
  std::vector<int> widths = {128, 360, 620, 1024, 1280};
  int width = 1920;
  int height = 1080;
};

struct ToyModelOptions {
  std::string output;
  unsigned long long seed = 2026;
};

// Each command writes its report to `out` and throws lic::Error on failure.
void RunEncode(const EncodeOptions& o, std::ostream& out);
void RunDecode(const DecodeOptions& o, std::ostream& out);
void RunEval(const EvalOptions& o, std::ostream& out);
// Emits rows up to the first invalid group, then throws.
void RunQuantizerTable(const QuantizerTableOptions& o, std::ostream& out);
void RunFlops(const FlopsOptions& o, std::ostream& out);
void RunToyModel(const ToyModelOptions& o, std::ostream& out);

}  // namespace lic::cli

#endif  // LIC_TOOLS_COMMANDS_H_
