// Copyright 2026 The pidkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PIDKIT_ERROR_HPP_
#define PIDKIT_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pidkit {

enum class ErrorCode {
  kFieldMismatch,
  kNotPrime,
  kDivisionByZero,
  kFieldTooSmall,
  kDimensionMismatch,
  kInvalidPoints,
  kIndexOutOfRange,
  kSingularMatrix,
  kUnsupportedForm,
  kInvalidParameters,
  kConstructionFailure,
  kStorageViolation,
  kInvalidDesign,
  kParseError,
  kBudgetExceeded,
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kFieldMismatch: return "field-mismatch";
    case ErrorCode::kNotPrime: return "not-prime";
    case ErrorCode::kDivisionByZero: return "division-by-zero";
    case ErrorCode::kFieldTooSmall: return "field-too-small";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kInvalidPoints: return "invalid-points";
    case ErrorCode::kIndexOutOfRange: return "index-out-of-range";
    case ErrorCode::kSingularMatrix: return "singular-matrix";
    case ErrorCode::kUnsupportedForm: return "unsupported-form";
    case ErrorCode::kInvalidParameters: return "invalid-parameters";
    case ErrorCode::kConstructionFailure: return "construction-failure";
    case ErrorCode::kStorageViolation: return "storage-violation";
    case ErrorCode::kInvalidDesign: return "invalid-design";
    case ErrorCode::kParseError: return "parse-error";
    case ErrorCode::kBudgetExceeded: return "budget-exceeded";
  }
  return "unknown";
}

// Every failure raised by the library carries one of the codes above so that
// callers (and the CLI exit-code mapping) can branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  // The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace pidkit

#endif  // PIDKIT_ERROR_HPP_
