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

#include "policylab/policy_json.hpp"

#include <nlohmann/json.hpp>

#include "policylab/errors.hpp"

namespace policylab {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void malformed(const std::string& detail) {
  throw Error(ErrorCode::kMalformedJson, detail);
}

[[noreturn]] void unsupported(const std::string& detail) {
  throw Error(ErrorCode::kUnsupportedFeature, detail);
}

// Reads a scalar string or list of strings into a pattern vector.
std::vector<Matcher> parse_patterns(const Json& value, const char* key) {
  std::vector<Matcher> patterns;
  if (value.is_string()) {
    patterns.push_back({value.get<std::string>()});
  } else if (value.is_array()) {
    for (const Json& item : value) {
      if (!item.is_string()) {
        malformed(std::string(key) + " list entries must be strings");
      }
      patterns.push_back({item.get<std::string>()});
    }
  } else {
    malformed(std::string(key) + " must be a string or list of strings");
  }
  if (patterns.empty()) {
    malformed(std::string(key) + " must contain at least one pattern");
  }
  return patterns;
}

// Principal values additionally allow the `{"AWS": ...}` map form, which
// flattens to its string list. Maps with any other key (Service, Federated,
// ...) are valid IAM but outside the subset.
std::vector<Matcher> parse_principal_patterns(const Json& value,
                                              const char* key) {
  if (value.is_object()) {
    if (value.size() != 1 || !value.contains("AWS")) {
      unsupported(std::string(key) + " maps other than {\"AWS\": ...}");
    }
    return parse_patterns(value.at("AWS"), key);
  }
  return parse_patterns(value, key);
}

Statement parse_statement(const Json& json) {
  if (!json.is_object()) malformed("Statement entries must be objects");

  Statement statement;
  bool saw_effect = false;
  bool saw_principal = false;
  bool saw_action = false;
  bool saw_resource = false;

  for (const auto& [key, value] : json.items()) {
    if (key == "Sid") {
      if (!value.is_string()) malformed("Sid must be a string");
      statement.sid = value.get<std::string>();
    } else if (key == "Effect") {
      if (!value.is_string()) malformed("Effect must be a string");
      const std::string effect = value.get<std::string>();
      if (effect == "Allow") {
        statement.effect = Effect::kAllow;
      } else if (effect == "Deny") {
        statement.effect = Effect::kDeny;
      } else {
        malformed("Effect must be \"Allow\" or \"Deny\", got \"" + effect +
                  "\"");
      }
      saw_effect = true;
    } else if (key == "Principal" || key == "NotPrincipal") {
      if (saw_principal) malformed("duplicate principal field");
      statement.principal.polarity = key[0] == 'N' ? Polarity::kNegated
                                                   : Polarity::kPositive;
      statement.principal.patterns =
          parse_principal_patterns(value, key.c_str());
      saw_principal = true;
    } else if (key == "Action" || key == "NotAction") {
      if (saw_action) malformed("duplicate action field");
      statement.action.polarity = key[0] == 'N' ? Polarity::kNegated
                                                : Polarity::kPositive;
      statement.action.patterns = parse_patterns(value, key.c_str());
      saw_action = true;
    } else if (key == "Resource" || key == "NotResource") {
      if (saw_resource) malformed("duplicate resource field");
      statement.resource.polarity = key[0] == 'N' ? Polarity::kNegated
                                                  : Polarity::kPositive;
      statement.resource.patterns = parse_patterns(value, key.c_str());
      saw_resource = true;
    } else if (key == "Condition") {
      unsupported("Condition blocks");
    } else {
      unsupported("statement key \"" + key + "\"");
    }
  }

  if (!saw_effect) malformed("statement is missing Effect");
  if (!saw_action) malformed("statement is missing Action/NotAction");
  if (!saw_resource) malformed("statement is missing Resource/NotResource");
  if (!saw_principal) {
    // Identity-based policies omit Principal; the model keeps every
    // statement a full triple constraint, so an absent field means "anyone".
    statement.principal.polarity = Polarity::kPositive;
    statement.principal.patterns = {{"*"}};
  }
  return statement;
}

Json patterns_to_json(const std::vector<Matcher>& patterns) {
  if (patterns.size() == 1) return patterns.front().pattern;
  Json list = Json::array();
  for (const Matcher& matcher : patterns) list.push_back(matcher.pattern);
  return list;
}

}  // namespace

Policy parse_policy(const std::string& json_text) {
  Json json = Json::parse(json_text, /*cb=*/nullptr,
                          /*allow_exceptions=*/false);
  if (json.is_discarded()) malformed("document is not valid JSON");
  if (!json.is_object()) malformed("policy document must be a JSON object");

  Policy policy;
  bool saw_statement = false;
  for (const auto& [key, value] : json.items()) {
    if (key == "Version") {
      if (!value.is_string()) malformed("Version must be a string");
      policy.version = value.get<std::string>();
    } else if (key == "Statement") {
      if (value.is_array()) {
        for (const Json& entry : value) {
          policy.statements.push_back(parse_statement(entry));
        }
      } else if (value.is_object()) {
        policy.statements.push_back(parse_statement(value));
      } else {
        malformed("Statement must be an object or a list of objects");
      }
      saw_statement = true;
    } else {
      unsupported("policy key \"" + key + "\"");
    }
  }
  if (!saw_statement) malformed("policy is missing Statement");
  if (policy.version.empty()) policy.version = "2012-10-17";
  return policy;
}

std::string serialize_policy(const Policy& policy) {
  Json json = Json::object();
  json["Version"] = policy.version;
  Json statements = Json::array();
  for (const Statement& statement : policy.statements) {
    Json entry = Json::object();
    if (!statement.sid.empty()) entry["Sid"] = statement.sid;
    entry["Effect"] = effect_name(statement.effect);
    entry[statement.principal.polarity == Polarity::kNegated ? "NotPrincipal"
                                                             : "Principal"] =
        patterns_to_json(statement.principal.patterns);
    entry[statement.action.polarity == Polarity::kNegated ? "NotAction"
                                                          : "Action"] =
        patterns_to_json(statement.action.patterns);
    entry[statement.resource.polarity == Polarity::kNegated ? "NotResource"
                                                            : "Resource"] =
        patterns_to_json(statement.resource.patterns);
    statements.push_back(std::move(entry));
  }
  json["Statement"] = std::move(statements);
  return json.dump();
}

}  // namespace policylab
