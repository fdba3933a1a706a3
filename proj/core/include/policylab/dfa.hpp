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
// Deterministic finite automata over a declared Alphabet, with the boolean
// algebra (union, intersection, complement), emptiness, shortest witness,
// and exact bounded counting. This is the executable form of the string
// constraints the analyzer composes: each glob pattern becomes a Dfa, and
// set operations on languages become automaton constructions.
//
// Canonical-form invariant: every Dfa produced by the functions in this
// header is minimized (Moore partition refinement) and renumbered by
// breadth-first discovery order from the start state in alphabet order.
// Under that invariant two Dfas recognize the same language if and only if
// they compare equal field-by-field, which is what operator== checks.
//
// Transition functions are total; the dead state, when needed, is an
// ordinary state. All operations are pure and Dfas are immutable after
// construction, so concurrent use is safe.

#ifndef POLICYLAB_DFA_HPP_
#define POLICYLAB_DFA_HPP_

#include <optional>
#include <string>
#include <vector>

#include "policylab/alphabet.hpp"
#include "policylab/util.hpp"

namespace policylab {

// How compile_glob folds characters before matching. Action names compare
// case-insensitively, so their automata are built with kAsciiLower: every
// transition treats an uppercase alphabet member like its lowercase form,
// which keeps automaton membership aligned with the evaluator's folding
// even over alphabets that contain uppercase characters.
enum class CaseFold { kNone, kAsciiLower };

// Exact number of accepted strings of length <= length_bound. Counts are
// arbitrary-precision: they grow as |alphabet|^k and leave 64 bits around
// k = 13 already.
struct CountResult {
  BigInt count;
  int length_bound = 0;

  friend bool operator==(const CountResult&, const CountResult&) = default;
};

class Dfa {
 public:
  // States are 0..num_states()-1; state 0 is the start state (canonical
  // numbering). transitions[s * alphabet.size() + c] is the successor of s
  // on the c-th alphabet character.
  Dfa(Alphabet alphabet, std::vector<bool> accepting,
      std::vector<int> transitions);

  const Alphabet& alphabet() const { return alphabet_; }
  int num_states() const { return static_cast<int>(accepting_.size()); }
  int start_state() const { return 0; }
  bool is_accepting(int state) const { return accepting_[state]; }
  int next_state(int state, int char_index) const {
    return transitions_[state * alphabet_.size() + char_index];
  }

  // Runs the automaton over text. Throws Error{kCharOutsideAlphabet} when
  // text uses characters outside the alphabet -- such strings are outside
  // the universe, and silently returning false would hide config mistakes.
  bool accepts(const std::string& text) const;

  // Compact stable encoding of the automaton structure, usable as a cache
  // key; equal canonical Dfas have equal keys.
  std::string canonical_key() const;

  // Language equality, by the canonical-form invariant.
  friend bool operator==(const Dfa& x, const Dfa& y) {
    return x.alphabet_ == y.alphabet_ && x.accepting_ == y.accepting_ &&
           x.transitions_ == y.transitions_;
  }

 private:
  Alphabet alphabet_;
  std::vector<bool> accepting_;
  std::vector<int> transitions_;
};

// Compiles a glob pattern (`*` = any run of characters, `?` = exactly one)
// into the canonical Dfa of its match language over `a`. Literal pattern
// characters must belong to the alphabet (Error{kCharOutsideAlphabet}).
// With CaseFold::kAsciiLower, the pattern is lowered and each transition
// folds its input character, so matching agrees with case-insensitive glob
// evaluation over the whole universe.
Dfa compile_glob(const std::string& pattern, const Alphabet& a,
                 CaseFold fold = CaseFold::kNone);

// The empty language / the language of all strings over `a`.
Dfa empty_language(const Alphabet& a);
Dfa all_strings(const Alphabet& a);

// Language union / intersection. Both operands must share an alphabet
// (Error{kAlphabetMismatch}).
Dfa unite(const Dfa& x, const Dfa& y);
Dfa intersect(const Dfa& x, const Dfa& y);

// Complement relative to all strings over the operand's alphabet.
Dfa complement(const Dfa& x);

// True iff the language is empty (no accepting state reachable).
bool is_empty(const Dfa& x);

// A shortest accepted string (ties broken by alphabet order), or nullopt
// for the empty language. Useful as a witness in reports and tests.
std::optional<std::string> shortest_accepted(const Dfa& x);

// Exact count of accepted strings of length <= k (the empty string counts
// when accepted), by dynamic programming over per-length path counts:
// O(k * states * alphabet) big-integer additions. k must be >= 0
// (Error{kParamOutOfRange}).
CountResult count_upto(const Dfa& x, int k);

// Minimum length of any string the glob pattern can match: one per literal
// or `?`, zero per `*`. Used to derive counting bounds that cannot exclude
// a pattern's witnesses.
int glob_min_length(const std::string& pattern);

// Graphviz dot rendering for debugging and documentation.
std::string to_dot(const Dfa& x);

}  // namespace policylab

#endif  // POLICYLAB_DFA_HPP_
