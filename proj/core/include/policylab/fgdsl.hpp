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
// The fine-grained specification language: a line-oriented, SQL-flavored
// notation for access rules, with a parser, a canonical renderer, and a
// deterministic compiler to policies. The compiler doubles as a perfect
// synthesizer in experiments: a compiled policy classifies its own
// specification flawlessly by construction.
//
// Grammar (authoritative):
//
//   spec    := { line } ;
//   line    := effect SP subject SP verb SP object [comment] NL ;
//   effect  := "ALLOW" | "DENY" ;
//   subject := ("user:"|"role:"|"service:"|"account:") name | "any" ;
//   verb    := "READ"|"WRITE"|"DELETE"|"LIST"|"ACL" | literal-action ;
//   object  := "bucket:" name ["/" keyglob] | arn | "*" ;
//
// `#` starts a comment running to end of line; blank lines are ignored.
// Keywords are case-insensitive, names case-preserving. A literal-action
// verb is any service-qualified action name containing `:` (the escape
// hatch for vocabularies the keyword table does not cover). File extension:
// .fgs.
//
// Object normalization: `bucket:b` and `bucket:b/` both mean everything in
// the bucket (key glob `*`), and that form is what the canonical renderer
// emits — so parse_fgspec(render_fgspec(s)) == s.

#ifndef POLICYLAB_FGDSL_HPP_
#define POLICYLAB_FGDSL_HPP_

#include <string>
#include <vector>

#include "policylab/policy.hpp"

namespace policylab {

enum class SubjectKind { kUser, kRole, kService, kAccount, kAny };

struct FgSubject {
  SubjectKind kind = SubjectKind::kAny;
  std::string name;  // empty iff kind == kAny

  friend bool operator==(const FgSubject&, const FgSubject&) = default;
};

enum class FgVerb { kRead, kWrite, kDelete, kList, kAcl, kLiteral };

struct FgVerbSpec {
  FgVerb verb = FgVerb::kRead;
  std::string literal;  // set iff verb == kLiteral

  friend bool operator==(const FgVerbSpec&, const FgVerbSpec&) = default;
};

enum class FgObjectKind { kBucketPath, kArn, kAny };

struct FgObject {
  FgObjectKind kind = FgObjectKind::kAny;
  std::string bucket;    // kBucketPath
  std::string key_glob;  // kBucketPath; `*` means the whole bucket
  std::string arn;       // kArn

  friend bool operator==(const FgObject&, const FgObject&) = default;
};

struct FgLine {
  Effect effect = Effect::kAllow;
  FgSubject subject;
  FgVerbSpec verb;
  FgObject object;

  friend bool operator==(const FgLine&, const FgLine&) = default;
};

struct FgSpec {
  std::vector<FgLine> lines;
  // Placeholder substituted into principal ARNs at compile time. Kept as
  // the literal below by default — synthesized and compiled policies must
  // agree on it for comparison to be meaningful.
  std::string account_id = "ACCOUNT_ID";

  friend bool operator==(const FgSpec&, const FgSpec&) = default;
};

inline constexpr char kDefaultAccountId[] = "ACCOUNT_ID";

// Parses specification text. Errors carry "line L, column C" context:
// Error{kSyntaxError} for text outside the grammar, Error{kUnknownVerb} for
// a verb that is neither a keyword nor a literal action, and
// Error{kUnknownSubjectKind} for a subject prefix outside the four kinds.
FgSpec parse_fgspec(const std::string& text);

// Canonical text form: uppercase keywords, one line per rule, `bucket:b/`
// for whole-bucket objects. parse_fgspec(render_fgspec(s)) == s.
std::string render_fgspec(const FgSpec& spec);

// Compiles one statement per line, in line order. Subjects become principal
// ARNs (user/role under the spec's account id, account as the account root,
// service names verbatim, `any` as `*`). Keyword verbs expand through a
// fixed action table; literal verbs pass through. Bucket objects become S3
// ARNs; LIST targets the bucket itself rather than its keys. Deterministic:
// equal specs compile to byte-equal serialized policies.
Policy compile_fgspec(const FgSpec& spec);

// Action sets for the keyword verbs, exposed for tests and tooling.
const std::vector<std::string>& verb_actions(FgVerb verb);

}  // namespace policylab

#endif  // POLICYLAB_FGDSL_HPP_
