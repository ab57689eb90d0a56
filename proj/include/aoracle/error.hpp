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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace aoracle {

enum class ErrorCode {
  kSyntax,
  kUnknownVariable,
  kPositionMix,
  kDepthExceeded,
  kSchema,
  kLengthMismatch,
  kNonSignalVariable,
  kNonUniformSampling,
  kGridMisaligned,
  kEmptyTargetClass,
  kTestSetMismatch,
  kIo,
  kValidation,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the condition and expression parsers.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::string expected,
              const std::string& message)
      : Error(ErrorCode::kSyntax, message),
        position_(position),
        expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

}  // namespace aoracle
