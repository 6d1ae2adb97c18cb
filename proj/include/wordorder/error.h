// Copyright 2026 The wordorder Authors.
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

#ifndef WORDORDER_ERROR_H_
#define WORDORDER_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wordorder {

enum class ErrorCode {
  kEmptyInput,
  kNotPermutable,
  kResampleBudgetExceeded,
  kParseError,
  kSchemaError,
  kUnknownComponent,
  kIoError,
  kNothingPermutable,
  kUnsupportedTask,
  kMissingPrediction,
  kDuplicatePrediction,
  kUnknownHeuristic,
  kKeyMismatch,
  kEmptyReport,
  kShapeError,
  kDivergence,
  kVocabMismatch,
  kInvalidArgument,
};

const char* ErrorCodeName(ErrorCode code);

// All library failures are reported through this type. The message is meant
// for humans; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised by readers; line() is 1-based, 0 when the format has no lines.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason);

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace wordorder

#endif  // WORDORDER_ERROR_H_
