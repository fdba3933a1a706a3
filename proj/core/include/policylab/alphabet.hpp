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
// Finite character domain for the automata engine.
//
// Every automaton is total over one Alphabet, and every literal character
// appearing in a pattern or concrete string handled symbolically must be a
// member — the engine validates this up front (CharOutsideAlphabet) rather
// than silently shrinking the universe. `*` and `?` are glob operators, not
// alphabet members.
//
// Alphabets carry a stable textual id so that reports and regression
// goldens can state exactly which universe a count was taken over:
// "default" for the stock set, "default+<extras>" for extensions of it, and
// "custom:<chars>" otherwise.

#ifndef POLICYLAB_ALPHABET_HPP_
#define POLICYLAB_ALPHABET_HPP_

#include <array>
#include <string>

namespace policylab {

class Alphabet {
 public:
  // Lowercase a-z, digits 0-9, and the punctuation , - . / : _ that IAM
  // names and ARNs use. 42 characters.
  static Alphabet standard();

  // Builds an alphabet from the distinct characters of `chars` (order does
  // not matter; the set is stored sorted). Throws Error{kConfigError} if
  // empty or containing `*` or `?`.
  static Alphabet from_characters(const std::string& chars);

  // Returns this alphabet extended by the distinct characters of `extra`
  // (minus any already present). Extending by nothing returns *this.
  Alphabet with_extra(const std::string& extra) const;

  // Member characters in ascending order.
  const std::string& characters() const { return characters_; }

  // Stable identifier (see file comment).
  const std::string& id() const { return id_; }

  int size() const { return static_cast<int>(characters_.size()); }

  bool contains(char c) const { return index_[static_cast<unsigned char>(c)] >= 0; }

  // Position of c in characters(), or -1 when absent.
  int index_of(char c) const { return index_[static_cast<unsigned char>(c)]; }

  // Throws Error{kCharOutsideAlphabet} if any literal character of the glob
  // pattern (everything except `*` and `?`) is not a member.
  void require_pattern_chars(const std::string& pattern) const;

  // Throws Error{kCharOutsideAlphabet} if any character of the concrete
  // string is not a member.
  void require_text_chars(const std::string& text) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.characters_ == b.characters_;
  }

 private:
  Alphabet(std::string characters, std::string id);

  std::string characters_;              // sorted, unique
  std::string id_;
  std::array<int, 256> index_;          // char -> position, -1 when absent
};

}  // namespace policylab

#endif  // POLICYLAB_ALPHABET_HPP_
