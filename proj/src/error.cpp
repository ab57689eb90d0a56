// Copyright 2026 The aoracle Authors
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

#include "aoracle/error.hpp"

namespace aoracle {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntax: return "syntax error";
    case ErrorCode::kUnknownVariable: return "unknown variable";
    case ErrorCode::kPositionMix: return "control-point position mix";
    case ErrorCode::kDepthExceeded: return "depth exceeded";
    case ErrorCode::kSchema: return "schema error";
    case ErrorCode::kLengthMismatch: return "length mismatch";
    case ErrorCode::kNonSignalVariable: return "non-signal variable";
    case ErrorCode::kNonUniformSampling: return "non-uniform sampling";
    case ErrorCode::kGridMisaligned: return "grid misaligned";
    case ErrorCode::kEmptyTargetClass: return "empty target class";
    case ErrorCode::kTestSetMismatch: return "test set mismatch";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kValidation: return "validation error";
  }
  return "error";
}

}  // namespace aoracle
