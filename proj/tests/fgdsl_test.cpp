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
// The specification language end to end: grammar acceptance and rejection
// with positional diagnostics, the verb/subject/object expansions of the
// compiler (checked by evaluating the compiled policy, not by inspecting
// its innards), and the canonical renderer round-trip.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "policylab/errors.hpp"
#include "policylab/fgdsl.hpp"
#include "policylab/policy.hpp"
#include "policylab/policy_json.hpp"

using namespace policylab;

namespace {

// Parses text expected to fail and returns (code, message) for inspection.
std::pair<ErrorCode, std::string> parse_failure(const std::string& text) {
  try {
    parse_fgspec(text);
  } catch (const Error& e) {
    return {e.code(), e.what()};
  }
  FAIL("expected a parse failure");
  return {ErrorCode::kSyntaxError, ""};
}

Decision run(const FgSpec& spec, const std::string& p, const std::string& a,
             const std::string& r) {
  return evaluate(compile_fgspec(spec), Request{p, a, r});
}

TEST_CASE("a one-line specification parses into the expected structure") {
  const FgSpec spec = parse_fgspec("ALLOW user:alice READ bucket:pics/\n");
  REQUIRE(spec.lines.size() == 1);
  const FgLine& line = spec.lines[0];
  CHECK(line.effect == Effect::kAllow);
  CHECK(line.subject == FgSubject{SubjectKind::kUser, "alice"});
  CHECK(line.verb == FgVerbSpec{FgVerb::kRead, ""});
  CHECK(line.object.kind == FgObjectKind::kBucketPath);
  CHECK(line.object.bucket == "pics");
  CHECK(line.object.key_glob == "*");
  CHECK(spec.account_id == std::string(kDefaultAccountId));
}

TEST_CASE("keywords are case-insensitive, names case-preserving") {
  const FgSpec spec = parse_fgspec("deny User:Alice write Bucket:pics/Raw*\n");
  REQUIRE(spec.lines.size() == 1);
  CHECK(spec.lines[0].effect == Effect::kDeny);
  CHECK(spec.lines[0].subject == FgSubject{SubjectKind::kUser, "Alice"});
  CHECK(spec.lines[0].verb.verb == FgVerb::kWrite);
  CHECK(spec.lines[0].object.bucket == "pics");
  CHECK(spec.lines[0].object.key_glob == "Raw*");
}

TEST_CASE("bucket names are restricted to the S3 character set") {
  auto [code, msg] = parse_failure("ALLOW user:a READ bucket:Pics/\n");
  CHECK(code == ErrorCode::kSyntaxError);
  CHECK(std::string(msg).find("bucket name") != std::string::npos);
}

TEST_CASE("comments and blank lines are skipped, not rules") {
  const std::string text =
      "# header comment\n"
      "\n"
      "ALLOW user:a READ bucket:b/  # trailing comment\n"
      "   \n"
      "DENY any DELETE *\n";
  const FgSpec spec = parse_fgspec(text);
  REQUIRE(spec.lines.size() == 2);
  CHECK(spec.lines[0].effect == Effect::kAllow);
  CHECK(spec.lines[1].subject.kind == SubjectKind::kAny);
  CHECK(spec.lines[1].object.kind == FgObjectKind::kAny);
}

TEST_CASE("missing final newline is tolerated") {
  CHECK(parse_fgspec("ALLOW any READ *").lines.size() == 1);
}

TEST_CASE("object forms: bucket, bucket path, arn, and star") {
  const FgSpec spec = parse_fgspec(
      "ALLOW user:a READ bucket:b\n"
      "ALLOW user:a READ bucket:b/dir/*.txt\n"
      "ALLOW user:a READ arn:aws:s3:::b/key\n"
      "ALLOW user:a READ *\n");
  REQUIRE(spec.lines.size() == 4);
  CHECK(spec.lines[0].object.key_glob == "*");  // whole bucket
  CHECK(spec.lines[1].object.key_glob == "dir/*.txt");
  CHECK(spec.lines[2].object.kind == FgObjectKind::kArn);
  CHECK(spec.lines[2].object.arn == "arn:aws:s3:::b/key");
  CHECK(spec.lines[3].object.kind == FgObjectKind::kAny);
}

TEST_CASE("literal verbs carry service-qualified actions through") {
  const FgSpec spec = parse_fgspec("ALLOW role:ops ec2:StartInstances *\n");
  CHECK(spec.lines[0].verb == FgVerbSpec{FgVerb::kLiteral, "ec2:StartInstances"});
}

TEST_CASE("parse errors carry line and column positions") {
  auto [code1, msg1] = parse_failure("PERMIT user:a READ *\n");
  CHECK(code1 == ErrorCode::kSyntaxError);
  CHECK(std::string(msg1).find("line 1") != std::string::npos);

  auto [code2, msg2] = parse_failure(
      "ALLOW user:a READ *\n"
      "ALLOW group:dev READ *\n");
  CHECK(code2 == ErrorCode::kUnknownSubjectKind);
  CHECK(std::string(msg2).find("line 2") != std::string::npos);

  auto [code3, msg3] = parse_failure("ALLOW user:a FROB *\n");
  CHECK(code3 == ErrorCode::kUnknownVerb);
  CHECK(std::string(msg3).find("line 1, column 14") != std::string::npos);

  // Trailing garbage after the object is not a comment.
  auto [code4, msg4] = parse_failure("ALLOW user:a READ * extra\n");
  CHECK(code4 == ErrorCode::kSyntaxError);

  // Too few words on a line.
  auto [code5, msg5] = parse_failure("ALLOW user:a READ\n");
  CHECK(code5 == ErrorCode::kSyntaxError);
}

TEST_CASE("a specification without any rule is rejected") {
  auto [code, msg] = parse_failure("# only a comment\n\n");
  CHECK(code == ErrorCode::kSyntaxError);
  CHECK(std::string(msg).find("at least one rule") != std::string::npos);
}

TEST_CASE("verb keyword table matches the documented action sets") {
  CHECK(verb_actions(FgVerb::kRead) ==
        std::vector<std::string>{"s3:GetObject", "s3:GetObjectVersion"});
  CHECK(verb_actions(FgVerb::kWrite) == std::vector<std::string>{"s3:PutObject"});
  CHECK(verb_actions(FgVerb::kDelete) ==
        std::vector<std::string>{"s3:DeleteObject"});
  CHECK(verb_actions(FgVerb::kList) == std::vector<std::string>{"s3:ListBucket"});
  CHECK(verb_actions(FgVerb::kAcl) ==
        std::vector<std::string>{"s3:GetObjectAcl", "s3:PutObjectAcl"});
}

TEST_CASE("rendering is canonical and parse-stable") {
  const std::string original =
      "# setup\n"
      "allow USER:alice read bucket:pics\n"
      "deny any delete bucket:pics/raw/*\n"
      "allow account:123456789012 s3:ListAllMyBuckets *\n";
  const FgSpec spec = parse_fgspec(original);
  const std::string canonical = render_fgspec(spec);
  CHECK(canonical ==
        "ALLOW user:alice READ bucket:pics/\n"
        "DENY any DELETE bucket:pics/raw/*\n"
        "ALLOW account:123456789012 s3:ListAllMyBuckets *\n");
  CHECK(parse_fgspec(canonical) == spec);
  // Rendering the reparse reproduces the same bytes: a fixed point.
  CHECK(render_fgspec(parse_fgspec(canonical)) == canonical);
}

TEST_CASE("compiled subjects map to the right principal ARNs") {
  // user:, role:, account: go through the account id; service names pass
  // verbatim; `any` is the wildcard.
  const FgSpec spec = parse_fgspec(
      "ALLOW user:alice READ *\n"
      "ALLOW role:deploy WRITE *\n"
      "ALLOW service:lambda.amazonaws.com READ *\n"
      "ALLOW account:999988887777 READ *\n");
  CHECK(run(spec, "arn:aws:iam::ACCOUNT_ID:user/alice", "s3:GetObject",
            "x") == Decision::kAllowed);
  CHECK(run(spec, "arn:aws:iam::ACCOUNT_ID:role/deploy", "s3:PutObject",
            "x") == Decision::kAllowed);
  CHECK(run(spec, "lambda.amazonaws.com", "s3:GetObject", "x") ==
        Decision::kAllowed);
  CHECK(run(spec, "arn:aws:iam::999988887777:root", "s3:GetObject", "x") ==
        Decision::kAllowed);
  CHECK(run(spec, "arn:aws:iam::ACCOUNT_ID:user/bob", "s3:GetObject", "x") ==
        Decision::kImplicitDeny);

  // The account id placeholder is substituted when changed.
  FgSpec pinned = spec;
  pinned.account_id = "123456789012";
  CHECK(run(pinned, "arn:aws:iam::123456789012:user/alice", "s3:GetObject",
            "x") == Decision::kAllowed);
  CHECK(run(pinned, "arn:aws:iam::ACCOUNT_ID:user/alice", "s3:GetObject",
            "x") == Decision::kImplicitDeny);
}

TEST_CASE("compiled verbs expand to their action sets") {
  const FgSpec spec = parse_fgspec("ALLOW user:a READ bucket:b/\n");
  const std::string alice = "arn:aws:iam::ACCOUNT_ID:user/a";
  const std::string key = "arn:aws:s3:::b/k";
  CHECK(run(spec, alice, "s3:GetObject", key) == Decision::kAllowed);
  CHECK(run(spec, alice, "s3:GetObjectVersion", key) == Decision::kAllowed);
  CHECK(run(spec, alice, "s3:PutObject", key) == Decision::kImplicitDeny);
  // Action matching is case-insensitive, as in the evaluator generally.
  CHECK(run(spec, alice, "S3:GETOBJECT", key) == Decision::kAllowed);
}

TEST_CASE("LIST targets the bucket itself, not its keys") {
  const FgSpec spec = parse_fgspec(
      "ALLOW user:a LIST bucket:b\n"
      "ALLOW user:a READ bucket:b\n");
  const std::string alice = "arn:aws:iam::ACCOUNT_ID:user/a";
  CHECK(run(spec, alice, "s3:ListBucket", "arn:aws:s3:::b") ==
        Decision::kAllowed);
  CHECK(run(spec, alice, "s3:ListBucket", "arn:aws:s3:::b/k") ==
        Decision::kImplicitDeny);
  CHECK(run(spec, alice, "s3:GetObject", "arn:aws:s3:::b/k") ==
        Decision::kAllowed);
}

TEST_CASE("deny lines override allows in the compiled policy") {
  const FgSpec spec = parse_fgspec(
      "ALLOW user:a READ bucket:b/\n"
      "DENY user:a READ bucket:b/secret/*\n");
  const std::string alice = "arn:aws:iam::ACCOUNT_ID:user/a";
  CHECK(run(spec, alice, "s3:GetObject", "arn:aws:s3:::b/public/k") ==
        Decision::kAllowed);
  CHECK(run(spec, alice, "s3:GetObject", "arn:aws:s3:::b/secret/k") ==
        Decision::kExplicitDeny);
}

TEST_CASE("compilation is deterministic down to the bytes") {
  const FgSpec spec = parse_fgspec(
      "ALLOW user:alice READ bucket:pics/\n"
      "DENY any DELETE *\n");
  const std::string first = serialize_policy(compile_fgspec(spec));
  const std::string second = serialize_policy(compile_fgspec(spec));
  CHECK(first == second);
  // One statement per line, in line order.
  const Policy policy = compile_fgspec(spec);
  REQUIRE(policy.statements.size() == 2);
  CHECK(policy.statements[0].effect == Effect::kAllow);
  CHECK(policy.statements[1].effect == Effect::kDeny);
}

TEST_CASE("a compiled policy classifies its own specification perfectly") {
  // The compiler is the trusted reference synthesizer; this is the property
  // that makes it trustworthy.
  const FgSpec spec = parse_fgspec(
      "ALLOW user:alice READ bucket:pics/\n"
      "ALLOW user:alice ACL bucket:pics/meta/*\n"
      "DENY user:alice READ bucket:pics/raw/*\n");
  const std::string alice = "arn:aws:iam::ACCOUNT_ID:user/alice";
  const Policy policy = compile_fgspec(spec);
  CHECK(evaluate(policy, {alice, "s3:GetObject", "arn:aws:s3:::pics/a"}) ==
        Decision::kAllowed);
  CHECK(evaluate(policy, {alice, "s3:PutObjectAcl",
                          "arn:aws:s3:::pics/meta/a"}) == Decision::kAllowed);
  CHECK(evaluate(policy, {alice, "s3:GetObject",
                          "arn:aws:s3:::pics/raw/a"}) ==
        Decision::kExplicitDeny);
  CHECK(evaluate(policy, {alice, "s3:PutObjectAcl", "arn:aws:s3:::pics/a"}) ==
        Decision::kImplicitDeny);
}

}  // namespace
