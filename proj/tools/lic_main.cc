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

// lic: encode, decode and evaluate images with a learned codec model set.

#include <stdio.h>

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.h"
#include "lic/status.h"

namespace {

int ReportError(const std::string& code, const std::string& message,
                int exit_code) {
  std::string escaped;
  for (char ch : message) {
    if (ch == '"' || ch == '\\') escaped += '\\';
    escaped += ch == '\n' ? ' ' : ch;
  }
  fprintf(stderr, "error code=%s message=\"%s\"\n", code.c_str(),
          escaped.c_str());
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace lic::cli;
  CLI::App app{"Learned image codec runtime and evaluation tools"};
  app.set_config("--config", "", "Flat key=value file with option defaults");
  app.require_subcommand(1);

  EncodeOptions enc;
  auto* encode = app.add_subcommand("encode", "Compress a PNG image");
  encode->add_option("input", enc.input, "Input PNG")->required();
  encode->add_option("-o,--out", enc.output, "Output container")->required();
  encode->add_option("--model-dir", enc.model_dir)->envname("LIC_MODEL_DIR");
  encode->add_option("--lambda", enc.lambda_index, "Lambda index")->capture_default_str();
  encode->add_option("--step", enc.step, "Quantization step")->capture_default_str();
  encode->add_option("--upper-bound", enc.upper_bound)->capture_default_str();

  DecodeOptions dec;
  auto* decode = app.add_subcommand("decode", "Reconstruct a PNG image");
  decode->add_option("input", dec.input, "Input container")->required();
  decode->add_option("-o,--out", dec.output, "Output PNG")->required();
  decode->add_option("--model-dir", dec.model_dir)->envname("LIC_MODEL_DIR");
  decode->add_option("--lambda", dec.lambda_index,
                     "Lambda index (default: from the container)");

  EvalOptions ev;
  auto* eval = app.add_subcommand("eval", "RD points and Bjontegaard deltas");
  eval->add_option("--dataset", ev.dataset, "Glob of PNG images");
  eval->add_option("--rd", ev.rd_input, "Use an existing RD CSV as test curves");
  eval->add_option("--model-dir", ev.model_dir)->envname("LIC_MODEL_DIR");
  eval->add_option("--lambda", ev.lambdas, "Lambda indices (default: all)")
      ->delimiter(',');
  eval->add_option("--label", ev.label)->capture_default_str();
  eval->add_option("--anchor", ev.anchor, "Anchor RD CSV");
  eval->add_option("--out", ev.output, "RD CSV to write");
  eval->add_option("--step", ev.step)->capture_default_str();
  eval->add_option("--upper-bound", ev.upper_bound)->capture_default_str();
  eval->add_option("--jobs", ev.jobs, "Images coded concurrently")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  QuantizerTableOptions qt;
  auto* qtable = app.add_subcommand("quantizer-table",
                                    "Per-group quantizer constants as CSV");
  qtable->add_option("--step", qt.step)->capture_default_str();
  qtable->add_option("--upper-bound", qt.upper_bound)->capture_default_str();
  qtable->add_option("-K,--max-group", qt.max_group, "Last group index")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  FlopsOptions fl;
  auto* flops = app.add_subcommand("flops", "Per-module FLOPs estimate");
  flops->add_option("--arch", fl.arch, "Architecture file (default: toy sweep)");
  flops->add_option("--widths", fl.widths, "Toy hyper/context widths")
      ->delimiter(',');
  flops->add_option("--width", fl.width)->check(CLI::PositiveNumber)->capture_default_str();
  flops->add_option("--height", fl.height)->check(CLI::PositiveNumber)->capture_default_str();

  ToyModelOptions toy;
  auto* toy_model = app.add_subcommand("toy-model",
                                       "Write a synthetic model directory");
  toy_model->add_option("-o,--out", toy.output, "Model directory")->required();
  toy_model->add_option("--seed", toy.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return ReportError("config", e.what(),
                       lic::ExitCodeFor(lic::ErrorCode::kConfig));
  }

  try {
    if (*encode) RunEncode(enc, std::cout);
    if (*decode) RunDecode(dec, std::cout);
    if (*eval) RunEval(ev, std::cout);
    if (*qtable) RunQuantizerTable(qt, std::cout);
    if (*flops) RunFlops(fl, std::cout);
    if (*toy_model) RunToyModel(toy, std::cout);
  } catch (const lic::Error& e) {
    std::cout.flush();
    return ReportError(lic::ErrorCodeName(e.code()), e.what(),
                       lic::ExitCodeFor(e.code()));
  } catch (const std::exception& e) {
    std::cout.flush();
    return ReportError("internal", e.what(), 1);
  }
  return 0;
}
