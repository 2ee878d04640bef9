// Copyright 2026 The GGQ Authors
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

namespace ggq {

enum class ErrorCode {
  kDuplicateId,
  kDanglingIncidence,
  kBadArity,
  kUnknownNode,
  kUnknownEdge,
  kJunctionMismatch,
  kBudgetExceeded,
  kSyntaxError,
  kUnknownFunction,
  kTypeMismatch,
  kEmptyAlphabetToken,
  kNotASubquery,
  kIdClash,
  kNegativeAnchor,
  kNegativeEnvironment,
  kInvalidSubgraph,
  kInvalidQuery,
  kIoError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kDanglingIncidence: return "DanglingIncidence";
    case ErrorCode::kBadArity: return "BadArity";
    case ErrorCode::kUnknownNode: return "UnknownNode";
    case ErrorCode::kUnknownEdge: return "UnknownEdge";
    case ErrorCode::kJunctionMismatch: return "JunctionMismatch";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kUnknownFunction: return "UnknownFunction";
    case ErrorCode::kTypeMismatch: return "TypeMismatch";
    case ErrorCode::kEmptyAlphabetToken: return "EmptyAlphabetToken";
    case ErrorCode::kNotASubquery: return "NotASubquery";
    case ErrorCode::kIdClash: return "IdClash";
    case ErrorCode::kNegativeAnchor: return "NegativeAnchor";
    case ErrorCode::kNegativeEnvironment: return "NegativeEnvironment";
    case ErrorCode::kInvalidSubgraph: return "InvalidSubgraph";
    case ErrorCode::kInvalidQuery: return "InvalidQuery";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

/// Base exception for every failure raised by the library. The code is the
/// stable, machine-checkable part; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the DSL, regex and document parsers. `position` is a byte
/// offset into the parsed text.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t position,
              ErrorCode code = ErrorCode::kSyntaxError)
      : Error(code, message + " at offset " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace ggq
