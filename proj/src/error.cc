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

#include "wordorder/error.h"

namespace wordorder {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kNotPermutable: return "NotPermutable";
    case ErrorCode::kResampleBudgetExceeded: return "ResampleBudgetExceeded";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kUnknownComponent: return "UnknownComponent";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kNothingPermutable: return "NothingPermutable";
    case ErrorCode::kUnsupportedTask: return "UnsupportedTask";
    case ErrorCode::kMissingPrediction: return "MissingPrediction";
    case ErrorCode::kDuplicatePrediction: return "DuplicatePrediction";
    case ErrorCode::kUnknownHeuristic: return "UnknownHeuristic";
    case ErrorCode::kKeyMismatch: return "KeyMismatch";
    case ErrorCode::kEmptyReport: return "EmptyReport";
    case ErrorCode::kShapeError: return "ShapeError";
    case ErrorCode::kDivergence: return "Divergence";
    case ErrorCode::kVocabMismatch: return "VocabMismatch";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

ParseError::ParseError(std::size_t line, const std::string& reason)
    : Error(ErrorCode::kParseError,
            line > 0 ? "line " + std::to_string(line) + ": " + reason : reason),
      line_(line) {}

}  // namespace wordorder
