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

#include "policylab/analyzer.hpp"

#include <set>
#include <tuple>

#include "json_support.hpp"
#include "policylab/errors.hpp"

namespace policylab {
namespace {

int max_pattern_min_length(const Policy& policy) {
  int longest = 0;
  for (const Statement& statement : policy.statements) {
    for (const Field* field :
         {&statement.principal, &statement.action, &statement.resource}) {
      for (const Matcher& matcher : field->patterns) {
        longest = std::max(longest, glob_min_length(matcher.pattern));
      }
    }
  }
  return longest;
}

}  // namespace

const char* relation_name(Relation relation) {
  switch (relation) {
    case Relation::kEquivalent: return "Equivalent";
    case Relation::kFirstStrictlyMore: return "FirstStrictlyMore";
    case Relation::kSecondStrictlyMore: return "SecondStrictlyMore";
    case Relation::kIncomparable: return "Incomparable";
  }
  return "Unknown";
}

int minimum_compare_bound(const Policy& p1, const Policy& p2) {
  return std::max(max_pattern_min_length(p1), max_pattern_min_length(p2));
}

int default_compare_bound(const Policy& p1, const Policy& p2) {
  return minimum_compare_bound(p1, p2) + 5;
}

ComparisonVerdict compare(const Policy& p1, const Policy& p2,
                          const Alphabet& a, int k) {
  const int minimum = minimum_compare_bound(p1, p2);
  if (k < minimum) {
    throw Error(ErrorCode::kBoundTooSmall,
                "bound " + std::to_string(k) + " is below " +
                    std::to_string(minimum) +
                    ", the longest minimum match length of a policy "
                    "pattern; counts would drop concrete requests");
  }

  const RequestSet first = denote(p1, a);
  const RequestSet second = denote(p2, a);
  const RequestSet only_first = subtract(first, second);
  const RequestSet only_second = subtract(second, first);

  ComparisonVerdict verdict;
  const bool first_extra = !only_first.is_empty();
  const bool second_extra = !only_second.is_empty();
  if (first_extra && second_extra) {
    verdict.relation = Relation::kIncomparable;
  } else if (first_extra) {
    verdict.relation = Relation::kFirstStrictlyMore;
  } else if (second_extra) {
    verdict.relation = Relation::kSecondStrictlyMore;
  } else {
    verdict.relation = Relation::kEquivalent;
  }
  verdict.only_in_first = only_first.count_upto(k);
  verdict.only_in_second = only_second.count_upto(k);
  verdict.alphabet_id = a.id();
  verdict.witness_only_in_first = only_first.shortest_member();
  verdict.witness_only_in_second = only_second.shortest_member();
  return verdict;
}

ComparisonVerdict compare(const Policy& p1, const Policy& p2) {
  const Alphabet a = covering_alphabet(Alphabet::standard(), {&p1, &p2});
  return compare(p1, p2, a, default_compare_bound(p1, p2));
}

ClassificationResult classify_requests(const Policy& policy,
                                       const std::vector<Request>& allowed,
                                       const std::vector<Request>& denied) {
  if (allowed.empty() && denied.empty()) {
    throw Error(ErrorCode::kEmptySpecification,
                "classification needs at least one request");
  }
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  for (const Request& request : allowed) {
    seen.insert({request.principal, request.action, request.resource});
  }
  for (const Request& request : denied) {
    if (seen.count({request.principal, request.action, request.resource})) {
      throw Error(ErrorCode::kInvalidRequest,
                  "request appears in both the allowed and denied lists: " +
                      request.principal + " " + request.action + " " +
                      request.resource);
    }
  }

  ClassificationResult result;
  auto classify = [&](const std::vector<Request>& requests,
                      bool expected_allowed) {
    for (const Request& request : requests) {
      ClassifiedRequest row;
      row.request = request;
      row.expected_allowed = expected_allowed;
      row.decision = evaluate(policy, request);
      row.correct = is_allowed(row.decision) == expected_allowed;
      if (row.correct) ++result.correct_count;
      result.rows.push_back(std::move(row));
    }
  };
  classify(allowed, /*expected_allowed=*/true);
  classify(denied, /*expected_allowed=*/false);
  result.rate = BigRational(result.correct_count,
                            static_cast<int>(result.rows.size()));
  return result;
}

namespace detail {

Json request_json(const Request& request) {
  Json json = Json::object();
  json["principal"] = request.principal;
  json["action"] = request.action;
  json["resource"] = request.resource;
  return json;
}

Json count_json(const CountResult& count) {
  Json json = Json::object();
  json["count"] = count.count.str();
  json["length_bound"] = count.length_bound;
  return json;
}

Json verdict_json(const ComparisonVerdict& verdict) {
  Json json = Json::object();
  json["relation"] = relation_name(verdict.relation);
  json["only_in_first"] = count_json(verdict.only_in_first);
  json["only_in_second"] = count_json(verdict.only_in_second);
  json["alphabet"] = verdict.alphabet_id;
  json["witness_only_in_first"] = verdict.witness_only_in_first
                                      ? request_json(*verdict.witness_only_in_first)
                                      : Json(nullptr);
  json["witness_only_in_second"] =
      verdict.witness_only_in_second
          ? request_json(*verdict.witness_only_in_second)
          : Json(nullptr);
  return json;
}

Json rate_json(const BigRational& rate) {
  Json json = Json::object();
  json["numerator"] = boost::multiprecision::numerator(rate).str();
  json["denominator"] = boost::multiprecision::denominator(rate).str();
  json["decimal"] = format_rational(rate);
  return json;
}

Json classification_json(const ClassificationResult& result) {
  Json json = Json::object();
  Json rows = Json::array();
  for (const ClassifiedRequest& row : result.rows) {
    Json entry = request_json(row.request);
    entry["expected"] = row.expected_allowed ? "allowed" : "denied";
    entry["decision"] = decision_name(row.decision);
    entry["correct"] = row.correct;
    rows.push_back(std::move(entry));
  }
  json["requests"] = std::move(rows);
  json["correct"] = result.correct_count;
  json["total"] = result.rows.size();
  json["rate"] = rate_json(result.rate);
  return json;
}

}  // namespace detail

std::string render_verdict_json(const ComparisonVerdict& verdict) {
  return detail::verdict_json(verdict).dump(2) + "\n";
}

std::string render_classification_json(const ClassificationResult& result) {
  return detail::classification_json(result).dump(2) + "\n";
}

}  // namespace policylab
