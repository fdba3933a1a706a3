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

#ifndef POLICYLAB_ERRORS_HPP_
#define POLICYLAB_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace policylab {

/// Every failure the library reports, one code per distinguishable cause.
/// Codes are part of the public contract: callers branch on them and the
/// CLI maps them to exit codes.
enum class ErrorCode {
  kMalformedJson,        // text is not JSON, or violates the document schema
  kUnsupportedFeature,   // valid IAM construct outside the supported subset
  kInvalidRequest,       // request fields violate the request invariants
  kCharOutsideAlphabet,  // literal character not covered by the alphabet
  kAlphabetMismatch,     // boolean operation across different alphabets
  kBoundTooSmall,        // counting bound shorter than a policy literal
  kSyntaxError,          // DSL text does not match the grammar
  kUnknownVerb,          // DSL verb neither a keyword nor a literal action
  kUnknownSubjectKind,   // DSL subject kind outside user/role/service/account
  kParamOutOfRange,      // generator parameters violate their invariants
  kMissingFile,          // corpus entry or fixture file absent
  kValidationFailure,    // corpus entry not equivalent to its ground truth
  kKindSourceMismatch,   // prompt kind incompatible with the given source
  kBackendUnreachable,   // synthesis backend could not produce a response
  kEmptySpecification,   // classification called with no requests at all
  kIoFailure,            // file could not be read or written
  kConfigError,          // missing or inconsistent configuration
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace policylab

#endif  // POLICYLAB_ERRORS_HPP_
