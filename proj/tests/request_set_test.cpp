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
// Alphabet construction rules, and RequestSet set algebra checked against
// brute-force enumeration of every triple over a tiny universe. The key
// properties: boolean operations agree with per-triple membership, counting
// never double-counts overlapping cubes, a count of zero means the set is
// empty (the bound is raised, never the answer faked), and the denotation
// of a policy agrees with a reference evaluator on every triple.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "policylab/alphabet.hpp"
#include "policylab/dfa.hpp"
#include "policylab/errors.hpp"
#include "policylab/policy.hpp"
#include "policylab/request_set.hpp"
#include "support/oracle.hpp"

using namespace policylab;

namespace {

Cube make_cube(const Alphabet& a, const std::string& p, const std::string& ac,
               const std::string& r) {
  return Cube{compile_glob(p, a), compile_glob(ac, a), compile_glob(r, a)};
}

// Membership of a triple in a list of (principal, action, resource) glob
// cubes, decided by the naive glob matcher alone.
bool cubes_contain(const std::vector<std::array<std::string, 3>>& cubes,
                   const std::string& p, const std::string& ac,
                   const std::string& r) {
  for (const auto& c : cubes) {
    if (testsupport::ref_glob(c[0], p) && testsupport::ref_glob(c[1], ac) &&
        testsupport::ref_glob(c[2], r)) {
      return true;
    }
  }
  return false;
}

TEST_CASE("standard alphabet has the documented members") {
  const Alphabet a = Alphabet::standard();
  CHECK(a.size() == 42);
  CHECK(a.id() == "default");
  for (char c = 'a'; c <= 'z'; ++c) CHECK(a.contains(c));
  for (char c = '0'; c <= '9'; ++c) CHECK(a.contains(c));
  for (char c : std::string(",-./:_")) CHECK(a.contains(c));
  CHECK_FALSE(a.contains('*'));
  CHECK_FALSE(a.contains('?'));
  CHECK_FALSE(a.contains('A'));
  CHECK_FALSE(a.contains(' '));
}

TEST_CASE("from_characters sorts, deduplicates, and validates") {
  const Alphabet a = Alphabet::from_characters("cbaab");
  CHECK(a.characters() == "abc");
  CHECK(a.id() == "custom:abc");
  CHECK(a.index_of('b') == 1);
  CHECK(a.index_of('z') == -1);

  CHECK_THROWS_AS(Alphabet::from_characters(""), Error);
  CHECK_THROWS_AS(Alphabet::from_characters("ab*"), Error);
  CHECK_THROWS_AS(Alphabet::from_characters("a?b"), Error);
}

TEST_CASE("with_extra records the extension in the id") {
  const Alphabet base = Alphabet::standard();
  CHECK(base.with_extra("").id() == "default");
  CHECK(base.with_extra("abc").id() == "default");  // already present

  const Alphabet ext = base.with_extra("CBA");
  CHECK(ext.id() == "default+ABC");
  CHECK(ext.size() == 45);
  CHECK(ext.contains('A'));

  // Extending an already-extended alphabet re-sorts the whole extra set.
  CHECK(ext.with_extra("Z").id() == "default+ABCZ");
}

TEST_CASE("pattern and text validation use distinct wildcard handling") {
  const Alphabet a = Alphabet::from_characters("ab");
  CHECK_NOTHROW(a.require_pattern_chars("a*b?"));
  CHECK_THROWS_AS(a.require_pattern_chars("a*z"), Error);
  CHECK_NOTHROW(a.require_text_chars("abba"));
  // In a concrete string, * is just a character — and not a member here.
  CHECK_THROWS_AS(a.require_text_chars("a*b"), Error);
}

TEST_CASE("empty and universe are what they claim") {
  const Alphabet a = Alphabet::from_characters("ab");
  const RequestSet none = RequestSet::empty(a);
  const RequestSet all = RequestSet::universe(a);
  CHECK(none.is_empty());
  CHECK(none.cubes().empty());
  CHECK_FALSE(all.is_empty());
  CHECK(all.contains(Request{"a", "b", "ab"}));
  CHECK(all.contains(Request{"", "", ""}));  // empty fields are valid members
  CHECK_FALSE(none.contains(Request{"a", "b", "ab"}));
}

TEST_CASE("cubes with an empty field automaton are pruned") {
  const Alphabet a = Alphabet::from_characters("ab");
  // intersect(a, b) over single-char exact patterns is empty.
  Cube dead{intersect(compile_glob("a", a), compile_glob("b", a)),
            compile_glob("*", a), compile_glob("*", a)};
  CHECK(RequestSet::from_cube(std::move(dead)).is_empty());
}

TEST_CASE("boolean operations require a shared alphabet") {
  const RequestSet x = RequestSet::universe(Alphabet::from_characters("ab"));
  const RequestSet y = RequestSet::universe(Alphabet::from_characters("abc"));
  CHECK_THROWS_AS(unite(x, y), Error);
  CHECK_THROWS_AS(intersect(x, y), Error);
  CHECK_THROWS_AS(subtract(x, y), Error);
}

TEST_CASE("set algebra agrees with per-triple enumeration") {
  const Alphabet a = Alphabet::from_characters("ab");
  const std::vector<std::string> universe = testsupport::all_strings_upto("ab", 3);
  const std::vector<std::string> patterns = {"*",  "a*", "*b", "?",
                                             "ab", "a?", "",   "*a*"};

  std::mt19937 rng(20260819);
  std::uniform_int_distribution<std::size_t> pick(0, patterns.size() - 1);

  for (int trial = 0; trial < 60; ++trial) {
    // Build two small cube unions with overlapping, redundant cubes.
    std::vector<std::array<std::string, 3>> gx, gy;
    RequestSet x = RequestSet::empty(a);
    RequestSet y = RequestSet::empty(a);
    const int nx = 1 + static_cast<int>(rng() % 3);
    const int ny = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < nx; ++i) {
      std::array<std::string, 3> c = {patterns[pick(rng)], patterns[pick(rng)],
                                      patterns[pick(rng)]};
      gx.push_back(c);
      x = unite(x, RequestSet::from_cube(make_cube(a, c[0], c[1], c[2])));
    }
    for (int i = 0; i < ny; ++i) {
      std::array<std::string, 3> c = {patterns[pick(rng)], patterns[pick(rng)],
                                      patterns[pick(rng)]};
      gy.push_back(c);
      y = unite(y, RequestSet::from_cube(make_cube(a, c[0], c[1], c[2])));
    }

    const RequestSet u = unite(x, y);
    const RequestSet n = intersect(x, y);
    const RequestSet d = subtract(x, y);

    for (const std::string& p : universe) {
      for (const std::string& ac : universe) {
        for (const std::string& r : universe) {
          const bool in_x = cubes_contain(gx, p, ac, r);
          const bool in_y = cubes_contain(gy, p, ac, r);
          const Request req{p, ac, r};
          CAPTURE(trial);
          CAPTURE(p);
          CAPTURE(ac);
          CAPTURE(r);
          REQUIRE(x.contains(req) == in_x);
          REQUIRE(u.contains(req) == (in_x || in_y));
          REQUIRE(n.contains(req) == (in_x && in_y));
          REQUIRE(d.contains(req) == (in_x && !in_y));
        }
      }
    }
  }
}

TEST_CASE("subtraction leaves pieces disjoint from the subtrahend") {
  const Alphabet a = Alphabet::from_characters("ab");
  const RequestSet x = RequestSet::from_cube(make_cube(a, "*", "*", "*"));
  const RequestSet y = RequestSet::from_cube(make_cube(a, "a*", "*b", "?"));
  const RequestSet d = subtract(x, y);
  // Subtracting one cube from one cube splits into at most three pieces,
  // one per field.
  CHECK(d.cubes().size() <= 3);
  CHECK(intersect(d, y).is_empty());
  // d and y together restore x exactly: (x \ y) ∪ (x ∩ y) = x.
  const RequestSet restored = unite(d, intersect(x, y));
  CHECK(subtract(restored, x).is_empty());
  CHECK(subtract(x, restored).is_empty());
}

TEST_CASE("counting never double-counts overlapping cubes") {
  const Alphabet a = Alphabet::from_characters("ab");
  // Heavily overlapping: "a*" ⊂ "*", plus an independent "*b" slice.
  RequestSet s = RequestSet::from_cube(make_cube(a, "a*", "a*", "*"));
  s = unite(s, RequestSet::from_cube(make_cube(a, "a*", "*", "*")));
  s = unite(s, RequestSet::from_cube(make_cube(a, "*b", "*", "*")));

  const std::vector<std::string> universe = testsupport::all_strings_upto("ab", 3);
  BigInt expected = 0;
  for (const std::string& p : universe) {
    for (const std::string& ac : universe) {
      for (const std::string& r : universe) {
        if (s.contains(Request{p, ac, r})) ++expected;
      }
    }
  }
  const CountResult got = s.count_upto(3);
  CHECK(got.count == expected);
  CHECK(got.length_bound == 3);
}

TEST_CASE("universe count is the closed form cubed") {
  const Alphabet a = Alphabet::from_characters("ab");
  // Strings of length <= 3 over two characters: 1+2+4+8 = 15 per field.
  const CountResult got = RequestSet::universe(a).count_upto(3);
  CHECK(got.count == BigInt(15) * 15 * 15);
}

TEST_CASE("count of zero happens only for the empty set") {
  const Alphabet a = Alphabet::from_characters("ab");

  const CountResult none = RequestSet::empty(a).count_upto(0);
  CHECK(none.count == 0);

  // Every member of this set has a length-4 principal, so a bound of 2
  // would naively count zero. The bound is raised to the shortest member
  // instead, and the raise is visible in the result.
  const RequestSet s = RequestSet::from_cube(make_cube(a, "aaaa", "?", "*"));
  const CountResult raised = s.count_upto(2);
  CHECK(raised.length_bound == 4);
  CHECK(raised.count > 0);
  // At the raised bound: 1 principal, 2 actions, strings <= 4 resources.
  CHECK(raised.count == BigInt(1) * 2 * 31);

  // A bound that already admits a member is kept as given.
  const CountResult kept = s.count_upto(4);
  CHECK(kept.length_bound == 4);
  CHECK(kept.count == raised.count);

  CHECK_THROWS_AS(s.count_upto(-1), Error);
}

TEST_CASE("shortest_member minimises the longest field") {
  const Alphabet a = Alphabet::from_characters("ab");
  CHECK_FALSE(RequestSet::empty(a).shortest_member().has_value());

  const RequestSet all = RequestSet::universe(a);
  const std::optional<Request> triple = all.shortest_member();
  REQUIRE(triple.has_value());
  CHECK(triple->principal.empty());
  CHECK(triple->action.empty());
  CHECK(triple->resource.empty());

  // The principal forces length 4; the other fields can stay short, and a
  // member with max field length 4 exists.
  const RequestSet s = RequestSet::from_cube(make_cube(a, "aaaa", "b?", "*"));
  const std::optional<Request> w = s.shortest_member();
  REQUIRE(w.has_value());
  CHECK(w->principal == "aaaa");
  CHECK(w->action.size() == 2);
  CHECK(s.contains(*w));
}

TEST_CASE("membership folds the action but not the other fields") {
  const Alphabet a = Alphabet::standard();
  const RequestSet s =
      RequestSet::from_cube(make_cube(a, "alice", "s3:getobject", "bucket/*"));
  CHECK(s.contains(Request{"alice", "s3:GetObject", "bucket/key"}));
  CHECK(s.contains(Request{"alice", "S3:GETOBJECT", "bucket/key"}));
  // Principal matching is verbatim — and an uppercase principal is not
  // even in the standard universe.
  CHECK_THROWS_AS(s.contains(Request{"Alice", "s3:GetObject", "bucket/key"}),
                  Error);
  try {
    s.contains(Request{"alice", "s3:GetObject", "bucket/\xc3"});
    FAIL("expected an alphabet error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCharOutsideAlphabet);
  }
}

TEST_CASE("denotation agrees with a reference evaluator on every triple") {
  const Alphabet a = Alphabet::from_characters("ab");
  const std::vector<std::string> universe = testsupport::all_strings_upto("ab", 3);
  const std::vector<std::string> patterns = {"*", "a*", "*b", "?", "ab", ""};

  std::mt19937 rng(424242);
  std::uniform_int_distribution<std::size_t> pick(0, patterns.size() - 1);

  auto random_field = [&](Field& field) {
    field.polarity = rng() % 4 == 0 ? Polarity::kNegated : Polarity::kPositive;
    field.patterns = {{patterns[pick(rng)]}};
    if (rng() % 3 == 0) field.patterns.push_back({patterns[pick(rng)]});
  };

  for (int trial = 0; trial < 80; ++trial) {
    Policy policy;
    const int stmts = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < stmts; ++i) {
      Statement st;
      st.effect = rng() % 3 == 0 ? Effect::kDeny : Effect::kAllow;
      random_field(st.principal);
      random_field(st.action);
      random_field(st.resource);
      policy.statements.push_back(std::move(st));
    }

    const RequestSet denoted = denote(policy, a);
    for (const std::string& p : universe) {
      for (const std::string& ac : universe) {
        for (const std::string& r : universe) {
          const bool allowed =
              testsupport::ref_evaluate(policy, Request{p, ac, r}) ==
              Decision::kAllowed;
          CAPTURE(trial);
          CAPTURE(p);
          CAPTURE(ac);
          CAPTURE(r);
          REQUIRE(denoted.contains(Request{p, ac, r}) == allowed);
        }
      }
    }
  }
}

TEST_CASE("denotation rejects patterns outside the alphabet") {
  const Alphabet a = Alphabet::from_characters("ab");
  Policy policy;
  Statement st;
  st.effect = Effect::kAllow;
  st.principal.patterns = {{"z*"}};
  st.action.patterns = {{"*"}};
  st.resource.patterns = {{"*"}};
  policy.statements.push_back(std::move(st));
  CHECK_THROWS_AS(denote(policy, a), Error);
}

TEST_CASE("covering_alphabet folds actions and keeps other fields verbatim") {
  Policy policy;
  Statement st;
  st.effect = Effect::kAllow;
  st.principal.patterns = {{"Alice"}};          // 'A' needed verbatim
  st.action.patterns = {{"s3:GetObject"}};      // folds to lowercase, no extras
  st.resource.patterns = {{"Bucket/*"}};        // 'B' needed verbatim
  policy.statements.push_back(std::move(st));

  const Alphabet a = covering_alphabet(Alphabet::standard(), {&policy});
  CHECK(a.id() == "default+AB");
  CHECK(a.contains('A'));
  CHECK(a.contains('B'));
  CHECK_FALSE(a.contains('G'));  // folded away with the action literal

  // Requests contribute characters the same way.
  const Alphabet b = covering_alphabet(
      Alphabet::standard(), {}, {Request{"bob", "S3:PutObject", "Zone/x"}});
  CHECK(b.id() == "default+Z");

  // Nothing new: the base alphabet comes back unchanged.
  Policy plain;
  Statement ps;
  ps.effect = Effect::kAllow;
  ps.principal.patterns = {{"bob"}};
  ps.action.patterns = {{"s3:*"}};
  ps.resource.patterns = {{"*"}};
  plain.statements.push_back(std::move(ps));
  CHECK(covering_alphabet(Alphabet::standard(), {&plain}).id() == "default");
}

}  // namespace
