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

#include "policylab/policy.hpp"

#include "policylab/errors.hpp"
#include "policylab/util.hpp"

namespace policylab {

const char* decision_name(Decision decision) {
  switch (decision) {
    case Decision::kAllowed: return "Allowed";
    case Decision::kExplicitDeny: return "ExplicitDeny";
    case Decision::kImplicitDeny: return "ImplicitDeny";
  }
  return "Unknown";
}

const char* effect_name(Effect effect) {
  return effect == Effect::kAllow ? "Allow" : "Deny";
}

bool is_allowed(Decision decision) { return decision == Decision::kAllowed; }

bool glob_match(const std::string& pattern, const std::string& text) {
  // Iterative matcher with single-star backtracking: when a mismatch occurs
  // after a `*`, re-anchor the star to swallow one more character. Each
  // (star position, text position) pair is visited at most once, so the
  // worst case is O(|pattern| * |text|).
  std::size_t p = 0;
  std::size_t t = 0;
  std::size_t star = std::string::npos;   // index in pattern of the last `*`
  std::size_t star_t = 0;                 // text position that star restarts from

  while (t < text.size()) {
    if (p < pattern.size() &&
        (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      star_t = t;
    } else if (star != std::string::npos) {
      p = star + 1;
      t = ++star_t;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

std::string normalize_for_match(FieldKind kind, const std::string& raw) {
  return kind == FieldKind::kAction ? ascii_lower(raw) : raw;
}

bool matcher_matches(FieldKind kind, const Matcher& matcher,
                     const std::string& value) {
  return glob_match(normalize_for_match(kind, matcher.pattern),
                    normalize_for_match(kind, value));
}

bool field_matches(FieldKind kind, const Field& field,
                   const std::string& value) {
  bool any = false;
  for (const Matcher& matcher : field.patterns) {
    if (matcher_matches(kind, matcher, value)) {
      any = true;
      break;
    }
  }
  return field.polarity == Polarity::kPositive ? any : !any;
}

bool statement_matches(const Statement& statement, const Request& request) {
  return field_matches(FieldKind::kPrincipal, statement.principal,
                       request.principal) &&
         field_matches(FieldKind::kAction, statement.action,
                       request.action) &&
         field_matches(FieldKind::kResource, statement.resource,
                       request.resource);
}

Decision evaluate(const Policy& policy, const Request& request) {
  validate_request(request);
  bool allowed = false;
  for (const Statement& statement : policy.statements) {
    if (!statement_matches(statement, request)) continue;
    if (statement.effect == Effect::kDeny) return Decision::kExplicitDeny;
    allowed = true;
  }
  return allowed ? Decision::kAllowed : Decision::kImplicitDeny;
}

void validate_request(const Request& request) {
  if (request.principal.empty() || request.action.empty() ||
      request.resource.empty()) {
    throw Error(ErrorCode::kInvalidRequest,
                "request fields must be non-empty");
  }
}

}  // namespace policylab
