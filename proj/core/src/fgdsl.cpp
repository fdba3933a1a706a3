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

#include "policylab/fgdsl.hpp"

#include <cctype>
#include <sstream>

#include "policylab/errors.hpp"
#include "policylab/util.hpp"

namespace policylab {
namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based start position in the source line
};

[[noreturn]] void fail(ErrorCode code, std::size_t line, std::size_t column,
                       const std::string& detail) {
  throw Error(code, "line " + std::to_string(line) + ", column " +
                        std::to_string(column) + ": " + detail);
}

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    tokens.push_back({line.substr(start, i - start), start + 1});
  }
  return tokens;
}

bool is_bucket_name(const std::string& name) {
  if (name.empty()) return false;
  for (char c : name) {
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '.' ||
          c == '-')) {
      return false;
    }
  }
  return true;
}

Effect parse_effect(const Token& token, std::size_t line) {
  const std::string word = ascii_lower(token.text);
  if (word == "allow") return Effect::kAllow;
  if (word == "deny") return Effect::kDeny;
  fail(ErrorCode::kSyntaxError, line, token.column,
       "expected ALLOW or DENY, got \"" + token.text + "\"");
}

FgSubject parse_subject(const Token& token, std::size_t line) {
  if (ascii_lower(token.text) == "any") return {SubjectKind::kAny, ""};
  const std::size_t colon = token.text.find(':');
  if (colon == std::string::npos) {
    fail(ErrorCode::kUnknownSubjectKind, line, token.column,
         "subject must be user:, role:, service:, account:, or any; got \"" +
             token.text + "\"");
  }
  const std::string kind = ascii_lower(token.text.substr(0, colon));
  const std::string name = token.text.substr(colon + 1);
  if (name.empty()) {
    fail(ErrorCode::kSyntaxError, line, token.column,
         "subject name must be non-empty");
  }
  if (kind == "user") return {SubjectKind::kUser, name};
  if (kind == "role") return {SubjectKind::kRole, name};
  if (kind == "service") return {SubjectKind::kService, name};
  if (kind == "account") return {SubjectKind::kAccount, name};
  fail(ErrorCode::kUnknownSubjectKind, line, token.column,
       "unknown subject kind \"" + kind + "\"");
}

FgVerbSpec parse_verb(const Token& token, std::size_t line) {
  const std::string word = ascii_lower(token.text);
  if (word == "read") return {FgVerb::kRead, ""};
  if (word == "write") return {FgVerb::kWrite, ""};
  if (word == "delete") return {FgVerb::kDelete, ""};
  if (word == "list") return {FgVerb::kList, ""};
  if (word == "acl") return {FgVerb::kAcl, ""};
  const std::size_t colon = token.text.find(':');
  if (colon == std::string::npos || colon == 0 ||
      colon + 1 == token.text.size()) {
    fail(ErrorCode::kUnknownVerb, line, token.column,
         "verb must be READ, WRITE, DELETE, LIST, ACL, or a literal "
         "service-qualified action; got \"" +
             token.text + "\"");
  }
  return {FgVerb::kLiteral, token.text};
}

FgObject parse_object(const Token& token, std::size_t line) {
  if (token.text == "*") return {FgObjectKind::kAny, "", "", ""};
  const std::string lowered = ascii_lower(token.text);
  if (lowered.rfind("bucket:", 0) == 0) {
    const std::string path = token.text.substr(7);
    const std::size_t slash = path.find('/');
    std::string bucket = slash == std::string::npos ? path
                                                    : path.substr(0, slash);
    std::string key =
        slash == std::string::npos ? "" : path.substr(slash + 1);
    if (!is_bucket_name(bucket)) {
      fail(ErrorCode::kSyntaxError, line, token.column,
           "bucket name must match [a-z0-9.-]+; got \"" + bucket + "\"");
    }
    // `bucket:b` and `bucket:b/` both mean the whole bucket.
    if (key.empty()) key = "*";
    return {FgObjectKind::kBucketPath, bucket, key, ""};
  }
  if (lowered.rfind("arn:", 0) == 0) {
    return {FgObjectKind::kArn, "", "", token.text};
  }
  fail(ErrorCode::kSyntaxError, line, token.column,
       "object must be bucket:<name>[/<keyglob>], an arn:..., or *; got \"" +
           token.text + "\"");
}

std::string subject_principal(const FgSubject& subject,
                              const std::string& account_id) {
  switch (subject.kind) {
    case SubjectKind::kUser:
      return "arn:aws:iam::" + account_id + ":user/" + subject.name;
    case SubjectKind::kRole:
      return "arn:aws:iam::" + account_id + ":role/" + subject.name;
    case SubjectKind::kService:
      return subject.name;
    case SubjectKind::kAccount:
      return "arn:aws:iam::" + subject.name + ":root";
    case SubjectKind::kAny:
      return "*";
  }
  return "*";
}

std::string object_resource(const FgObject& object, bool list_verb) {
  switch (object.kind) {
    case FgObjectKind::kBucketPath:
      // Listing addresses the bucket itself; everything else addresses
      // keys inside it.
      if (list_verb) return "arn:aws:s3:::" + object.bucket;
      return "arn:aws:s3:::" + object.bucket + "/" + object.key_glob;
    case FgObjectKind::kArn:
      return object.arn;
    case FgObjectKind::kAny:
      return "*";
  }
  return "*";
}

std::string render_subject(const FgSubject& subject) {
  switch (subject.kind) {
    case SubjectKind::kUser: return "user:" + subject.name;
    case SubjectKind::kRole: return "role:" + subject.name;
    case SubjectKind::kService: return "service:" + subject.name;
    case SubjectKind::kAccount: return "account:" + subject.name;
    case SubjectKind::kAny: return "any";
  }
  return "any";
}

std::string render_verb(const FgVerbSpec& verb) {
  switch (verb.verb) {
    case FgVerb::kRead: return "READ";
    case FgVerb::kWrite: return "WRITE";
    case FgVerb::kDelete: return "DELETE";
    case FgVerb::kList: return "LIST";
    case FgVerb::kAcl: return "ACL";
    case FgVerb::kLiteral: return verb.literal;
  }
  return verb.literal;
}

std::string render_object(const FgObject& object) {
  switch (object.kind) {
    case FgObjectKind::kBucketPath:
      if (object.key_glob.empty() || object.key_glob == "*") {
        return "bucket:" + object.bucket + "/";
      }
      return "bucket:" + object.bucket + "/" + object.key_glob;
    case FgObjectKind::kArn:
      return object.arn;
    case FgObjectKind::kAny:
      return "*";
  }
  return "*";
}

}  // namespace

FgSpec parse_fgspec(const std::string& text) {
  FgSpec spec;
  std::istringstream lines(text);
  std::string raw;
  std::size_t line_number = 0;
  while (std::getline(lines, raw)) {
    ++line_number;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::vector<Token> tokens = tokenize(raw);
    if (tokens.empty()) continue;
    if (tokens.size() != 4) {
      fail(ErrorCode::kSyntaxError, line_number,
           tokens.size() > 4 ? tokens[4].column : tokens.back().column,
           "expected exactly: effect subject verb object");
    }
    FgLine line;
    line.effect = parse_effect(tokens[0], line_number);
    line.subject = parse_subject(tokens[1], line_number);
    line.verb = parse_verb(tokens[2], line_number);
    line.object = parse_object(tokens[3], line_number);
    spec.lines.push_back(std::move(line));
  }
  if (spec.lines.empty()) {
    fail(ErrorCode::kSyntaxError, line_number == 0 ? 1 : line_number, 1,
         "specification must contain at least one rule");
  }
  return spec;
}

std::string render_fgspec(const FgSpec& spec) {
  std::string out;
  for (const FgLine& line : spec.lines) {
    out += line.effect == Effect::kAllow ? "ALLOW " : "DENY ";
    out += render_subject(line.subject);
    out += ' ';
    out += render_verb(line.verb);
    out += ' ';
    out += render_object(line.object);
    out += '\n';
  }
  return out;
}

const std::vector<std::string>& verb_actions(FgVerb verb) {
  static const std::vector<std::string> kRead = {"s3:GetObject",
                                                 "s3:GetObjectVersion"};
  static const std::vector<std::string> kWrite = {"s3:PutObject"};
  static const std::vector<std::string> kDelete = {"s3:DeleteObject"};
  static const std::vector<std::string> kList = {"s3:ListBucket"};
  static const std::vector<std::string> kAcl = {"s3:GetObjectAcl",
                                                "s3:PutObjectAcl"};
  static const std::vector<std::string> kNone = {};
  switch (verb) {
    case FgVerb::kRead: return kRead;
    case FgVerb::kWrite: return kWrite;
    case FgVerb::kDelete: return kDelete;
    case FgVerb::kList: return kList;
    case FgVerb::kAcl: return kAcl;
    case FgVerb::kLiteral: return kNone;
  }
  return kNone;
}

Policy compile_fgspec(const FgSpec& spec) {
  Policy policy;
  policy.version = "2012-10-17";
  for (const FgLine& line : spec.lines) {
    Statement statement;
    statement.effect = line.effect;
    statement.principal.patterns = {
        {subject_principal(line.subject, spec.account_id)}};
    if (line.verb.verb == FgVerb::kLiteral) {
      statement.action.patterns = {{line.verb.literal}};
    } else {
      for (const std::string& action : verb_actions(line.verb.verb)) {
        statement.action.patterns.push_back({action});
      }
    }
    statement.resource.patterns = {
        {object_resource(line.object, line.verb.verb == FgVerb::kList)}};
    policy.statements.push_back(std::move(statement));
  }
  return policy;
}

}  // namespace policylab
