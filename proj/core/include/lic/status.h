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

#ifndef LIC_STATUS_H_
#define LIC_STATUS_H_

#include <stdexcept>
#include <string>

namespace lic {

// Failure categories. The CLI maps each category onto an exit code, so new
// codes must be added to ExitCodeFor() as well.
enum class ErrorCode {
  kConfig,              // inconsistent configuration, layer spec, or weights
  kInvalidGroup,        // quantizer group index yields a non-positive bias
  kDomain,              // argument outside the mathematical domain
  kScheduling,          // context requested before it was decoded
  kNoOverlap,           // RD curves do not overlap
  kMalformed,           // unparseable text input (weights, specs, CSV)
  kIo,                  // file system failure
  kCoding,              // symbol outside its frequency table
  kTruncated,           // stream or container ended early
  kChecksum,            // container checksum mismatch
  kModelMismatch,       // container bound to a different model
  kBadContainer,        // malformed container header
  kUnsupportedVersion,  // container version newer than this build
};

// Stable lowercase identifier, used in machine-parseable error lines.
const char* ErrorCodeName(ErrorCode code);

// Process exit code for a failure category: 2 configuration, 3 codec, 4 I/O.
int ExitCodeFor(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lic

#endif  // LIC_STATUS_H_
