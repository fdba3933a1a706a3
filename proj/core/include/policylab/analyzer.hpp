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
// Policy comparison and request classification.
//
// compare() decides how two policies relate by permissiveness. The relation
// is computed from exact (unbounded) emptiness of the two difference sets
// "allowed by the first but not the second" and vice versa; the counts
// quantify each difference over triples whose fields fit a length bound.
// Relation and counts therefore always agree: a difference set is empty
// exactly when its count is zero.
//
// classify_requests() checks a policy against a concrete specification:
// every request the specification allows must evaluate to Allowed, every
// denied one must not, and the correctness rate is kept as an exact
// rational so reports never accumulate floating-point noise.

#ifndef POLICYLAB_ANALYZER_HPP_
#define POLICYLAB_ANALYZER_HPP_

#include <optional>
#include <string>
#include <vector>

#include "policylab/alphabet.hpp"
#include "policylab/dfa.hpp"
#include "policylab/policy.hpp"
#include "policylab/request_set.hpp"
#include "policylab/util.hpp"

namespace policylab {

enum class Relation {
  kEquivalent,         // both policies allow exactly the same requests
  kFirstStrictlyMore,  // first allows everything second does, plus more
  kSecondStrictlyMore,
  kIncomparable,       // each allows requests the other does not
};

const char* relation_name(Relation relation);

struct ComparisonVerdict {
  Relation relation = Relation::kEquivalent;
  // Requests allowed by exactly one of the two policies, counted over
  // triples whose fields all fit the respective result's length bound.
  CountResult only_in_first;
  CountResult only_in_second;
  // Universe the comparison ran over; counts are only comparable across
  // verdicts sharing an alphabet id and bound.
  std::string alphabet_id;
  // Example members of the nonempty difference sets, when any.
  std::optional<Request> witness_only_in_first;
  std::optional<Request> witness_only_in_second;
};

// Smallest length bound no policy literal can escape: the longest minimum
// match length over all patterns of both policies. compare() rejects
// smaller bounds as BoundTooSmall, since they could silently drop concrete
// requests from the counts.
int minimum_compare_bound(const Policy& p1, const Policy& p2);

// minimum_compare_bound + 5: every literal fits with room for the globbed
// tails that typically surround them, and regression counts stay stable.
int default_compare_bound(const Policy& p1, const Policy& p2);

// Four-way permissiveness comparison (see file comment). Pattern literals
// must lie inside `a` (Error{kCharOutsideAlphabet}); k must be at least
// minimum_compare_bound (Error{kBoundTooSmall}).
ComparisonVerdict compare(const Policy& p1, const Policy& p2,
                          const Alphabet& a, int k);

// Convenience form: compares over the standard alphabet extended to cover
// both policies, at the default bound.
ComparisonVerdict compare(const Policy& p1, const Policy& p2);

struct ClassifiedRequest {
  Request request;
  bool expected_allowed = false;  // from the allowed (vs denied) list
  Decision decision = Decision::kImplicitDeny;
  bool correct = false;
};

struct ClassificationResult {
  std::vector<ClassifiedRequest> rows;  // allowed list first, then denied
  int correct_count = 0;
  BigRational rate;  // correct / total, exact
};

// Evaluates every request of a concrete specification against the policy.
// A request from `allowed` is classified correctly iff it evaluates to
// Allowed; one from `denied` iff it does not. Throws
// Error{kEmptySpecification} when both lists are empty and
// Error{kInvalidRequest} when they overlap.
ClassificationResult classify_requests(const Policy& policy,
                                       const std::vector<Request>& allowed,
                                       const std::vector<Request>& denied);

// JSON renderings used by reports and the command-line tool. Verdicts
// carry the relation tag, both counts as decimal strings with their
// bounds, the alphabet id, and witnesses; classifications carry per-request
// rows plus exact and decimal rates. Both are deterministic: equal inputs
// render byte-equal.
std::string render_verdict_json(const ComparisonVerdict& verdict);
std::string render_classification_json(const ClassificationResult& result);

}  // namespace policylab

#endif  // POLICYLAB_ANALYZER_HPP_
