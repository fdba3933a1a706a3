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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "policylab/errors.hpp"
#include "policylab/policy.hpp"
#include "support/oracle.hpp"

using namespace policylab;

namespace {

Statement allow(const std::string& principal, const std::string& action,
                const std::string& resource) {
  Statement s;
  s.effect = Effect::kAllow;
  s.principal.patterns = {{principal}};
  s.action.patterns = {{action}};
  s.resource.patterns = {{resource}};
  return s;
}

Statement deny(const std::string& principal, const std::string& action,
               const std::string& resource) {
  Statement s = allow(principal, action, resource);
  s.effect = Effect::kDeny;
  return s;
}

}  // namespace

TEST_CASE("glob matching handles stars, question marks, and literals") {
  CHECK(glob_match("", ""));
  CHECK_FALSE(glob_match("", "a"));
  CHECK(glob_match("*", ""));
  CHECK(glob_match("*", "anything"));
  CHECK(glob_match("a*", "a"));
  CHECK(glob_match("a*", "abc"));
  CHECK_FALSE(glob_match("a*", "ba"));
  CHECK(glob_match("*b", "b"));
  CHECK(glob_match("*b", "aab"));
  CHECK(glob_match("a*b*c", "aXbYc"));
  CHECK_FALSE(glob_match("a*b*c", "aXcYb"));
  CHECK(glob_match("?", "x"));
  CHECK_FALSE(glob_match("?", ""));
  CHECK_FALSE(glob_match("?", "xy"));
  CHECK(glob_match("a?c", "abc"));
  CHECK_FALSE(glob_match("a?c", "ac"));
  // Backtracking traps: a greedy first star must retreat.
  CHECK(glob_match("*ab", "aab"));
  CHECK(glob_match("a*ab", "aaab"));
  CHECK(glob_match("*aab*", "xaaabx"));
  CHECK_FALSE(glob_match("*aab", "aba"));
  CHECK(glob_match("**", ""));
  CHECK(glob_match("*?*", "x"));
  CHECK_FALSE(glob_match("*?*", ""));
}

TEST_CASE("glob matching agrees with the naive oracle on every small case") {
  // Every pattern over {a, b, *, ?} of length <= 4 against every text over
  // {a, b} of length <= 4: exhaustive, no sampling.
  const std::vector<std::string> patterns =
      testsupport::all_strings_upto("ab*?", 4);
  const std::vector<std::string> texts = testsupport::all_strings_upto("ab", 4);
  REQUIRE(patterns.size() == 341);
  REQUIRE(texts.size() == 31);
  for (const std::string& pattern : patterns) {
    for (const std::string& text : texts) {
      CAPTURE(pattern);
      CAPTURE(text);
      REQUIRE(glob_match(pattern, text) == testsupport::ref_glob(pattern, text));
    }
  }
}

TEST_CASE("only actions are case-folded for matching") {
  CHECK(normalize_for_match(FieldKind::kAction, "S3:GetObject") ==
        "s3:getobject");
  CHECK(normalize_for_match(FieldKind::kPrincipal, "Alice") == "Alice");
  CHECK(normalize_for_match(FieldKind::kResource, "Bucket/File") ==
        "Bucket/File");

  CHECK(matcher_matches(FieldKind::kAction, {"s3:GetObject"}, "S3:GETOBJECT"));
  CHECK(matcher_matches(FieldKind::kAction, {"S3:*"}, "s3:putobject"));
  CHECK_FALSE(
      matcher_matches(FieldKind::kPrincipal, {"alice"}, "Alice"));
  CHECK_FALSE(
      matcher_matches(FieldKind::kResource, {"bucket/*"}, "Bucket/x"));
}

TEST_CASE("field polarity: positive wants a hit, negated wants none") {
  Field positive;
  positive.patterns = {{"a*"}, {"b"}};
  CHECK(field_matches(FieldKind::kResource, positive, "abc"));
  CHECK(field_matches(FieldKind::kResource, positive, "b"));
  CHECK_FALSE(field_matches(FieldKind::kResource, positive, "c"));

  Field negated;
  negated.polarity = Polarity::kNegated;
  negated.patterns = {{"a*"}, {"b"}};
  CHECK_FALSE(field_matches(FieldKind::kResource, negated, "abc"));
  CHECK(field_matches(FieldKind::kResource, negated, "c"));

  const Field empty_positive;
  CHECK_FALSE(field_matches(FieldKind::kResource, empty_positive, "x"));
  Field empty_negated;
  empty_negated.polarity = Polarity::kNegated;
  CHECK(field_matches(FieldKind::kResource, empty_negated, "x"));
}

TEST_CASE("a statement matches only when all three fields do") {
  const Statement s = allow("alice", "s3:GetObject", "mybucket/*");
  CHECK(statement_matches(s, {"alice", "s3:GetObject", "mybucket/x"}));
  CHECK_FALSE(statement_matches(s, {"bob", "s3:GetObject", "mybucket/x"}));
  CHECK_FALSE(statement_matches(s, {"alice", "s3:PutObject", "mybucket/x"}));
  CHECK_FALSE(statement_matches(s, {"alice", "s3:GetObject", "other/x"}));
}

TEST_CASE("deny overrides allow regardless of statement order") {
  Policy p;
  p.version = "2012-10-17";
  p.statements = {allow("*", "s3:*", "mybucket/*"),
                  deny("*", "s3:PutObject", "mybucket/secret/*")};

  CHECK(evaluate(p, {"alice", "s3:GetObject", "mybucket/a"}) ==
        Decision::kAllowed);
  CHECK(evaluate(p, {"alice", "s3:PutObject", "mybucket/secret/a"}) ==
        Decision::kExplicitDeny);
  CHECK(evaluate(p, {"alice", "s3:GetObject", "elsewhere"}) ==
        Decision::kImplicitDeny);

  std::swap(p.statements[0], p.statements[1]);
  CHECK(evaluate(p, {"alice", "s3:PutObject", "mybucket/secret/a"}) ==
        Decision::kExplicitDeny);
  CHECK(evaluate(p, {"alice", "s3:GetObject", "mybucket/a"}) ==
        Decision::kAllowed);
}

TEST_CASE("an explicit deny needs a matching deny, not just a non-match") {
  Policy p;
  p.statements = {deny("bob", "*", "*")};
  CHECK(evaluate(p, {"alice", "s3:GetObject", "x"}) ==
        Decision::kImplicitDeny);
  CHECK(evaluate(p, {"bob", "s3:GetObject", "x"}) == Decision::kExplicitDeny);

  const Policy empty;
  CHECK(evaluate(empty, {"alice", "s3:GetObject", "x"}) ==
        Decision::kImplicitDeny);
}

TEST_CASE("evaluation agrees with the reference evaluator on random policies") {
  // Structured random policies over a three-character vocabulary: every
  // polarity combination, one or two patterns per field, one to three
  // statements. The reference implementation is naive recursion.
  std::mt19937 rng(20260819);
  const std::vector<std::string> pattern_pool =
      testsupport::all_strings_upto("ab*?", 3);
  const std::vector<std::string> value_pool =
      testsupport::all_strings_upto("ab", 3);

  const auto pick = [&](const std::vector<std::string>& pool) {
    return pool[rng() % pool.size()];
  };
  const auto random_field = [&] {
    Field field;
    field.polarity = rng() % 4 == 0 ? Polarity::kNegated : Polarity::kPositive;
    const int n = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < n; ++i) field.patterns.push_back({pick(pattern_pool)});
    return field;
  };

  for (int trial = 0; trial < 300; ++trial) {
    Policy policy;
    const int statements = 1 + static_cast<int>(rng() % 3);
    for (int s = 0; s < statements; ++s) {
      Statement statement;
      statement.effect = rng() % 2 == 0 ? Effect::kAllow : Effect::kDeny;
      statement.principal = random_field();
      statement.action = random_field();
      statement.resource = random_field();
      policy.statements.push_back(std::move(statement));
    }
    for (int q = 0; q < 40; ++q) {
      // Empty fields are invalid requests; draw non-empty values.
      Request request;
      do {
        request = {pick(value_pool), pick(value_pool), pick(value_pool)};
      } while (request.principal.empty() || request.action.empty() ||
               request.resource.empty());
      CAPTURE(trial);
      REQUIRE(evaluate(policy, request) ==
              testsupport::ref_evaluate(policy, request));
    }
  }
}

TEST_CASE("requests with an empty field are rejected") {
  const Policy p;
  CHECK_THROWS_AS(evaluate(p, {"", "s3:GetObject", "x"}), Error);
  CHECK_THROWS_AS(evaluate(p, {"alice", "", "x"}), Error);
  CHECK_THROWS_AS(evaluate(p, {"alice", "s3:GetObject", ""}), Error);
  try {
    evaluate(p, {"", "a", "b"});
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidRequest);
  }
}

TEST_CASE("decision helpers") {
  CHECK(is_allowed(Decision::kAllowed));
  CHECK_FALSE(is_allowed(Decision::kExplicitDeny));
  CHECK_FALSE(is_allowed(Decision::kImplicitDeny));
  CHECK(std::string(decision_name(Decision::kAllowed)) == "Allowed");
  CHECK(std::string(decision_name(Decision::kExplicitDeny)) ==
        "ExplicitDeny");
  CHECK(std::string(decision_name(Decision::kImplicitDeny)) ==
        "ImplicitDeny");
  CHECK(std::string(effect_name(Effect::kAllow)) == "Allow");
  CHECK(std::string(effect_name(Effect::kDeny)) == "Deny");
}
