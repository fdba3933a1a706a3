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
// Symbolic sets of (principal, action, resource) triples, and the
// denotation of a policy as such a set.
//
// A RequestSet is a finite union of cubes; each cube is a product of three
// per-field automata over one shared alphabet. A triple belongs to the set
// when some cube accepts all three of its fields. Cubes keep the field
// universes independent, which makes counting a cube exact (a product of
// per-field counts) and keeps complements cheap: the complement of a cube
// distributes into three cubes, each complementing one field.
//
// denote() maps a policy to the set of requests it allows: the union of its
// Allow-statement cubes minus the union of its Deny-statement cubes. The
// keystone contract, enforced by tests: for every request whose fields lie
// in the alphabet universe, membership here agrees with the evaluator.

#ifndef POLICYLAB_REQUEST_SET_HPP_
#define POLICYLAB_REQUEST_SET_HPP_

#include <optional>
#include <vector>

#include "policylab/alphabet.hpp"
#include "policylab/dfa.hpp"
#include "policylab/policy.hpp"

namespace policylab {

// One product constraint: accepts a triple iff each field automaton accepts
// the corresponding component.
struct Cube {
  Dfa principal;
  Dfa action;
  Dfa resource;
};

class RequestSet {
 public:
  static RequestSet empty(const Alphabet& a);
  static RequestSet universe(const Alphabet& a);
  static RequestSet from_cube(Cube cube);

  const Alphabet& alphabet() const { return alphabet_; }

  // Cubes with an empty field automaton denote nothing and are pruned on
  // construction, so the list is empty exactly when the set is.
  const std::vector<Cube>& cubes() const { return cubes_; }
  bool is_empty() const { return cubes_.empty(); }

  // Membership of a concrete request. The action is case-folded exactly as
  // the evaluator folds it; principal and resource are matched verbatim.
  // Throws Error{kCharOutsideAlphabet} when a field (the action after
  // folding) lies outside the alphabet universe.
  bool contains(const Request& request) const;

  // A member whose longest field is as short as possible, or nullopt when
  // the set is empty. Used as the human-readable witness in verdicts.
  std::optional<Request> shortest_member() const;

  // Exact number of member triples with every field of length <= k,
  // counted over a disjoint decomposition of the cubes (no double
  // counting); the empty string participates like any other field value.
  // Guarantee: the result is 0 iff the set is empty — when every member
  // has some field longer than k, the bound is raised to the smallest
  // max-field length of any member, and the raised bound is reported in
  // the result. k must be >= 0 (Error{kParamOutOfRange}).
  CountResult count_upto(int k) const;

  friend RequestSet unite(const RequestSet& x, const RequestSet& y);
  friend RequestSet intersect(const RequestSet& x, const RequestSet& y);
  friend RequestSet subtract(const RequestSet& x, const RequestSet& y);
  friend RequestSet denote(const Policy& policy, const Alphabet& a);

 private:
  RequestSet(Alphabet alphabet, std::vector<Cube> cubes);

  Alphabet alphabet_;
  std::vector<Cube> cubes_;
};

// The set of requests the policy allows (see file comment). Every literal
// pattern character must lie in the alphabet (Error{kCharOutsideAlphabet});
// action patterns are compiled case-insensitively.
RequestSet denote(const Policy& policy, const Alphabet& a);

// Smallest extension of `base` containing every literal character the
// given policies and requests can put in front of the engine: principal
// and resource literals verbatim, action literals case-folded (their
// automata are built from folded patterns). The result's id records the
// extension, and every verdict carries that id.
Alphabet covering_alphabet(const Alphabet& base,
                           const std::vector<const Policy*>& policies,
                           const std::vector<Request>& requests = {});

}  // namespace policylab

#endif  // POLICYLAB_REQUEST_SET_HPP_
