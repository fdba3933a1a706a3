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

#include "policylab/request_set.hpp"

#include <algorithm>
#include <unordered_map>
#include <utility>

#include "policylab/errors.hpp"
#include "policylab/util.hpp"

namespace policylab {
namespace {

bool cube_is_empty(const Cube& cube) {
  return is_empty(cube.principal) || is_empty(cube.action) ||
         is_empty(cube.resource);
}

void append_if_nonempty(std::vector<Cube>& cubes, Cube cube) {
  if (!cube_is_empty(cube)) cubes.push_back(std::move(cube));
}

// cube \ other, as up to three pairwise-disjoint cubes: triples escaping on
// the principal field, those escaping on the action while the principal is
// shared, and those escaping on the resource while both others are shared.
std::vector<Cube> subtract_cube(const Cube& cube, const Cube& other) {
  std::vector<Cube> pieces;
  append_if_nonempty(pieces, {intersect(cube.principal,
                                        complement(other.principal)),
                              cube.action, cube.resource});
  Dfa shared_principal = intersect(cube.principal, other.principal);
  append_if_nonempty(pieces,
                     {shared_principal,
                      intersect(cube.action, complement(other.action)),
                      cube.resource});
  append_if_nonempty(pieces,
                     {std::move(shared_principal),
                      intersect(cube.action, other.action),
                      intersect(cube.resource, complement(other.resource))});
  return pieces;
}

std::vector<Cube> subtract_cubes(std::vector<Cube> lhs,
                                 const std::vector<Cube>& rhs) {
  for (const Cube& other : rhs) {
    std::vector<Cube> remaining;
    for (const Cube& cube : lhs) {
      std::vector<Cube> pieces = subtract_cube(cube, other);
      std::move(pieces.begin(), pieces.end(),
                std::back_inserter(remaining));
    }
    lhs = std::move(remaining);
    if (lhs.empty()) break;
  }
  return lhs;
}

// Rewrites the union as pairwise-disjoint cubes (same denoted set), so a
// count can sum per-cube products without double counting.
std::vector<Cube> disjoint_decomposition(const std::vector<Cube>& cubes) {
  std::vector<Cube> disjoint;
  for (const Cube& cube : cubes) {
    std::vector<Cube> pieces = {cube};
    for (const Cube& prior : disjoint) {
      std::vector<Cube> remaining;
      for (const Cube& piece : pieces) {
        std::vector<Cube> parts = subtract_cube(piece, prior);
        std::move(parts.begin(), parts.end(),
                  std::back_inserter(remaining));
      }
      pieces = std::move(remaining);
      if (pieces.empty()) break;
    }
    std::move(pieces.begin(), pieces.end(), std::back_inserter(disjoint));
  }
  return disjoint;
}

int shortest_length(const Dfa& dfa) {
  std::optional<std::string> witness = shortest_accepted(dfa);
  return witness ? static_cast<int>(witness->size()) : -1;
}

// Smallest k such that the cube has a member with every field of length
// <= k: each field contributes its shortest witness.
int cube_witness_bound(const Cube& cube) {
  return std::max({shortest_length(cube.principal),
                   shortest_length(cube.action),
                   shortest_length(cube.resource)});
}

void require_same_alphabet(const RequestSet& x, const RequestSet& y) {
  if (!(x.alphabet() == y.alphabet())) {
    throw Error(ErrorCode::kAlphabetMismatch,
                "request sets use different alphabets: " + x.alphabet().id() +
                    " vs " + y.alphabet().id());
  }
}

// Compiles one statement field into a Dfa: the union of its pattern
// languages, complemented when the field is negated.
Dfa field_dfa(const Field& field, FieldKind kind, const Alphabet& a) {
  const CaseFold fold =
      kind == FieldKind::kAction ? CaseFold::kAsciiLower : CaseFold::kNone;
  Dfa united = empty_language(a);
  for (const Matcher& matcher : field.patterns) {
    united = unite(united, compile_glob(matcher.pattern, a, fold));
  }
  return field.polarity == Polarity::kNegated ? complement(united) : united;
}

void collect_pattern_chars(const Field& field, FieldKind kind,
                           std::string& chars) {
  for (const Matcher& matcher : field.patterns) {
    for (char c : normalize_for_match(kind, matcher.pattern)) {
      if (c != '*' && c != '?') chars.push_back(c);
    }
  }
}

}  // namespace

RequestSet RequestSet::empty(const Alphabet& a) { return RequestSet(a, {}); }

RequestSet RequestSet::universe(const Alphabet& a) {
  Dfa all = all_strings(a);
  std::vector<Cube> cubes;
  cubes.push_back({all, all, all});
  return RequestSet(a, std::move(cubes));
}

RequestSet RequestSet::from_cube(Cube cube) {
  if (!(cube.principal.alphabet() == cube.action.alphabet()) ||
      !(cube.principal.alphabet() == cube.resource.alphabet())) {
    throw Error(ErrorCode::kAlphabetMismatch,
                "cube fields use different alphabets");
  }
  Alphabet a = cube.principal.alphabet();
  std::vector<Cube> cubes;
  append_if_nonempty(cubes, std::move(cube));
  return RequestSet(std::move(a), std::move(cubes));
}

RequestSet::RequestSet(Alphabet alphabet, std::vector<Cube> cubes)
    : alphabet_(std::move(alphabet)), cubes_(std::move(cubes)) {}

bool RequestSet::contains(const Request& request) const {
  const std::string action = normalize_for_match(FieldKind::kAction,
                                                 request.action);
  for (const Cube& cube : cubes_) {
    if (cube.principal.accepts(request.principal) &&
        cube.action.accepts(action) && cube.resource.accepts(request.resource)) {
      return true;
    }
  }
  // Even a miss must be a miss within the universe; validate so that
  // out-of-alphabet fields fail loudly rather than reading as "not member".
  alphabet_.require_text_chars(request.principal);
  alphabet_.require_text_chars(action);
  alphabet_.require_text_chars(request.resource);
  return false;
}

std::optional<Request> RequestSet::shortest_member() const {
  std::optional<Request> best;
  int best_bound = -1;
  for (const Cube& cube : cubes_) {
    const int bound = cube_witness_bound(cube);
    if (best && bound >= best_bound) continue;
    best_bound = bound;
    best = Request{*shortest_accepted(cube.principal),
                   *shortest_accepted(cube.action),
                   *shortest_accepted(cube.resource)};
  }
  return best;
}

CountResult RequestSet::count_upto(int k) const {
  if (k < 0) {
    throw Error(ErrorCode::kParamOutOfRange,
                "length bound must be non-negative");
  }
  if (cubes_.empty()) return {BigInt(0), k};

  std::vector<Cube> disjoint = disjoint_decomposition(cubes_);

  // A nonempty set must never count as zero: if no member fits the
  // requested bound, raise it to the closest fitting member and report the
  // raised bound.
  int bound = k;
  int witness_bound = -1;
  for (const Cube& cube : disjoint) {
    const int b = cube_witness_bound(cube);
    if (witness_bound < 0 || b < witness_bound) witness_bound = b;
  }
  if (witness_bound > bound) bound = witness_bound;

  // The same field automaton recurs across decomposed cubes; counting is
  // the expensive step, so memoize per canonical structure.
  std::unordered_map<std::string, BigInt> cache;
  auto count_field = [&](const Dfa& dfa) -> const BigInt& {
    auto [it, inserted] = cache.try_emplace(dfa.canonical_key());
    if (inserted) it->second = policylab::count_upto(dfa, bound).count;
    return it->second;
  };

  BigInt total = 0;
  for (const Cube& cube : disjoint) {
    total += count_field(cube.principal) * count_field(cube.action) *
             count_field(cube.resource);
  }
  return {std::move(total), bound};
}

RequestSet unite(const RequestSet& x, const RequestSet& y) {
  require_same_alphabet(x, y);
  std::vector<Cube> cubes = x.cubes_;
  cubes.insert(cubes.end(), y.cubes_.begin(), y.cubes_.end());
  return RequestSet(x.alphabet_, std::move(cubes));
}

RequestSet intersect(const RequestSet& x, const RequestSet& y) {
  require_same_alphabet(x, y);
  std::vector<Cube> cubes;
  for (const Cube& a : x.cubes_) {
    for (const Cube& b : y.cubes_) {
      append_if_nonempty(cubes, {intersect(a.principal, b.principal),
                                 intersect(a.action, b.action),
                                 intersect(a.resource, b.resource)});
    }
  }
  return RequestSet(x.alphabet_, std::move(cubes));
}

RequestSet subtract(const RequestSet& x, const RequestSet& y) {
  require_same_alphabet(x, y);
  return RequestSet(x.alphabet_, subtract_cubes(x.cubes_, y.cubes_));
}

RequestSet denote(const Policy& policy, const Alphabet& a) {
  std::vector<Cube> allow;
  std::vector<Cube> deny;
  for (const Statement& statement : policy.statements) {
    Cube cube{field_dfa(statement.principal, FieldKind::kPrincipal, a),
              field_dfa(statement.action, FieldKind::kAction, a),
              field_dfa(statement.resource, FieldKind::kResource, a)};
    append_if_nonempty(statement.effect == Effect::kAllow ? allow : deny,
                       std::move(cube));
  }
  return subtract(RequestSet(a, std::move(allow)),
                  RequestSet(a, std::move(deny)));
}

Alphabet covering_alphabet(const Alphabet& base,
                           const std::vector<const Policy*>& policies,
                           const std::vector<Request>& requests) {
  std::string chars;
  for (const Policy* policy : policies) {
    for (const Statement& statement : policy->statements) {
      collect_pattern_chars(statement.principal, FieldKind::kPrincipal,
                            chars);
      collect_pattern_chars(statement.action, FieldKind::kAction, chars);
      collect_pattern_chars(statement.resource, FieldKind::kResource, chars);
    }
  }
  for (const Request& request : requests) {
    chars += request.principal;
    chars += normalize_for_match(FieldKind::kAction, request.action);
    chars += request.resource;
  }
  return base.with_extra(chars);
}

}  // namespace policylab
