// Copyright 2026 The Policylab Authors
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

#include "policylab/errors.hpp"

namespace policylab {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedJson: return "MalformedJson";
    case ErrorCode::kUnsupportedFeature: return "UnsupportedFeature";
    case ErrorCode::kInvalidRequest: return "InvalidRequest";
    case ErrorCode::kCharOutsideAlphabet: return "CharOutsideAlphabet";
    case ErrorCode::kAlphabetMismatch: return "AlphabetMismatch";
    case ErrorCode::kBoundTooSmall: return "BoundTooSmall";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kUnknownVerb: return "UnknownVerb";
    case ErrorCode::kUnknownSubjectKind: return "UnknownSubjectKind";
    case ErrorCode::kParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::kMissingFile: return "MissingFile";
    case ErrorCode::kValidationFailure: return "ValidationFailure";
    case ErrorCode::kKindSourceMismatch: return "KindSourceMismatch";
    case ErrorCode::kBackendUnreachable: return "BackendUnreachable";
    case ErrorCode::kEmptySpecification: return "EmptySpecification";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "UnknownError";
}

}  // namespace policylab
