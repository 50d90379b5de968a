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

#include "lic/status.h"

namespace lic {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig:
      return "config";
    case ErrorCode::kInvalidGroup:
      return "invalid_group";
    case ErrorCode::kDomain:
      return "domain";
    case ErrorCode::kScheduling:
      return "scheduling";
    case ErrorCode::kNoOverlap:
      return "no_overlap";
    case ErrorCode::kMalformed:
      return "malformed";
    case ErrorCode::kIo:
      return "io";
    case ErrorCode::kCoding:
      return "coding";
    case ErrorCode::kTruncated:
      return "truncated";
    case ErrorCode::kChecksum:
      return "checksum";
    case ErrorCode::kModelMismatch:
      return "model_mismatch";
    case ErrorCode::kBadContainer:
      return "bad_container";
    case ErrorCode::kUnsupportedVersion:
      return "unsupported_version";
  }
  return "unknown";
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo:
      return 4;
    case ErrorCode::kCoding:
    case ErrorCode::kTruncated:
    case ErrorCode::kChecksum:
    case ErrorCode::kModelMismatch:
    case ErrorCode::kBadContainer:
    case ErrorCode::kUnsupportedVersion:
      return 3;
    default:
      return 2;
  }
}

}  // namespace lic
