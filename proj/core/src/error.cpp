// Copyright 2026 The eoa Authors
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

#include "eoa/error.hpp"

namespace eoa {

std::string_view errorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kNotPSD: return "NotPSD";
    case ErrorCode::kInvalidState: return "InvalidState";
    case ErrorCode::kLabelClash: return "LabelClash";
    case ErrorCode::kUnknownLabel: return "UnknownLabel";
    case ErrorCode::kNotUnitary: return "NotUnitary";
    case ErrorCode::kUnknownExample: return "UnknownExample";
    case ErrorCode::kOverlappingSystems: return "OverlappingSystems";
    case ErrorCode::kRoleMissing: return "RoleMissing";
    case ErrorCode::kTooManyHelpers: return "TooManyHelpers";
    case ErrorCode::kInvalidPOVM: return "InvalidPOVM";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotClassicalQuantum: return "NotClassicalQuantum";
    case ErrorCode::kDecompositionMismatch: return "DecompositionMismatch";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kDegenerateProjection: return "DegenerateProjection";
    case ErrorCode::kEmptyChain: return "EmptyChain";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(errorCodeName(code)) + ": " + what), code_(code) {}

}  // namespace eoa
