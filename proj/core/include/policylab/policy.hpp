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
//
// Core data model for the IAM-style policy subset handled by this toolkit,
// plus the deny-overrides request evaluator.
//
// A policy is a list of statements. Each statement carries an effect (Allow
// or Deny) and three fields -- principal, action, resource. A field is a
// disjunction of glob patterns plus a polarity bit: positive fields
// (Principal/Action/Resource) match when some pattern matches, negated
// fields (NotPrincipal/NotAction/NotResource) match when no pattern does.
//
// Matching is case-sensitive for principals and resources and
// case-insensitive for actions; normalize_for_match() is the single place
// that folding rule lives so the evaluator and the automata engine cannot
// drift apart.

#ifndef POLICYLAB_POLICY_HPP_
#define POLICYLAB_POLICY_HPP_

#include <string>
#include <vector>

namespace policylab {

// One access request: may <principal> perform <action> on <resource>?
struct Request {
  std::string principal;
  std::string action;
  std::string resource;

  friend bool operator==(const Request&, const Request&) = default;
};

enum class Effect { kAllow, kDeny };

// Whether a statement field is a plain match list or a negated one
// (NotPrincipal / NotAction / NotResource).
enum class Polarity { kPositive, kNegated };

// Which request component a pattern is matched against. Actions fold case;
// the other two do not.
enum class FieldKind { kPrincipal, kAction, kResource };

// A single glob pattern. `*` matches any (possibly empty) substring and `?`
// matches exactly one character; all other characters match themselves.
struct Matcher {
  std::string pattern;

  friend bool operator==(const Matcher&, const Matcher&) = default;
};

// One statement field: a set of patterns combined with OR, under a polarity.
struct Field {
  Polarity polarity = Polarity::kPositive;
  std::vector<Matcher> patterns;

  friend bool operator==(const Field&, const Field&) = default;
};

struct Statement {
  std::string sid;  // optional; empty when absent
  Effect effect = Effect::kAllow;
  Field principal;
  Field action;
  Field resource;

  friend bool operator==(const Statement&, const Statement&) = default;
};

struct Policy {
  std::string version;  // e.g. "2012-10-17"
  std::vector<Statement> statements;

  friend bool operator==(const Policy&, const Policy&) = default;
};

// Outcome of evaluating one request against one policy.
enum class Decision { kAllowed, kExplicitDeny, kImplicitDeny };

const char* decision_name(Decision decision);
const char* effect_name(Effect effect);

// Returns true when the request is granted, i.e. the decision is kAllowed.
bool is_allowed(Decision decision);

// Glob matching over full strings: `*` matches any run of characters
// (including none), `?` matches exactly one. Case-sensitive; callers fold
// case beforehand where the field demands it.
bool glob_match(const std::string& pattern, const std::string& text);

// Folds a raw string into the form used for matching in the given field:
// actions are lowered (ASCII), principals and resources pass through.
std::string normalize_for_match(FieldKind kind, const std::string& raw);

// True when the matcher accepts the value, after field-appropriate folding
// of both pattern and value.
bool matcher_matches(FieldKind kind, const Matcher& matcher,
                     const std::string& value);

// True when the field matches the value: positive fields need at least one
// pattern to match, negated fields require that none do. A positive field
// with no patterns matches nothing; a negated field with no patterns
// matches everything.
bool field_matches(FieldKind kind, const Field& field,
                   const std::string& value);

// True when all three fields of the statement match the request.
bool statement_matches(const Statement& statement, const Request& request);

// Deny-overrides evaluation: any matching Deny statement wins; otherwise a
// matching Allow statement grants; otherwise the request is implicitly
// denied. Statement order never matters.
Decision evaluate(const Policy& policy, const Request& request);

// Rejects requests with an empty principal, action, or resource by throwing
// Error{kInvalidRequest}.
void validate_request(const Request& request);

}  // namespace policylab

#endif  // POLICYLAB_POLICY_HPP_
