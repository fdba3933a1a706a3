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

#include "policylab/dfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "policylab/errors.hpp"

namespace policylab {
namespace {

// Working representation during construction, before canonicalization.
struct RawDfa {
  int start = 0;
  std::vector<bool> accepting;
  std::vector<std::vector<int>> next;  // [state][char index]
};

// Moore partition refinement. Assumes every state is reachable (true for
// all construction sites in this file); produces the quotient automaton.
RawDfa minimize(const RawDfa& d, int num_chars) {
  const int n = static_cast<int>(d.accepting.size());
  std::vector<int> cls(n);
  for (int s = 0; s < n; ++s) cls[s] = d.accepting[s] ? 1 : 0;

  int num_classes = 0;
  for (;;) {
    std::map<std::vector<int>, int> signature_ids;
    std::vector<int> next_cls(n);
    std::vector<int> signature(num_chars + 1);
    for (int s = 0; s < n; ++s) {
      signature[0] = cls[s];
      for (int c = 0; c < num_chars; ++c) signature[c + 1] = cls[d.next[s][c]];
      auto [it, inserted] = signature_ids.try_emplace(
          signature, static_cast<int>(signature_ids.size()));
      next_cls[s] = it->second;
    }
    const int count = static_cast<int>(signature_ids.size());
    cls.swap(next_cls);
    if (count == num_classes) break;
    num_classes = count;
  }

  RawDfa out;
  out.start = cls[d.start];
  out.accepting.assign(num_classes, false);
  out.next.assign(num_classes, std::vector<int>(num_chars, 0));
  std::vector<bool> seen(num_classes, false);
  for (int s = 0; s < n; ++s) {
    const int c = cls[s];
    if (seen[c]) continue;
    seen[c] = true;
    out.accepting[c] = d.accepting[s];
    for (int a = 0; a < num_chars; ++a) out.next[c][a] = cls[d.next[s][a]];
  }
  return out;
}

// Renumbers states by breadth-first discovery order from the start state,
// visiting characters in alphabet order, and builds the final Dfa. With
// minimization beforehand this yields the canonical form operator== relies
// on: same language => identical field-by-field representation.
Dfa canonicalize(Alphabet alphabet, const RawDfa& d) {
  const int num_chars = alphabet.size();
  const int n = static_cast<int>(d.accepting.size());
  std::vector<int> order(n, -1);
  std::deque<int> queue;
  order[d.start] = 0;
  queue.push_back(d.start);
  int discovered = 1;
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    for (int c = 0; c < num_chars; ++c) {
      const int t = d.next[s][c];
      if (order[t] < 0) {
        order[t] = discovered++;
        queue.push_back(t);
      }
    }
  }

  std::vector<bool> accepting(discovered, false);
  std::vector<int> transitions(static_cast<std::size_t>(discovered) *
                               num_chars);
  for (int s = 0; s < n; ++s) {
    if (order[s] < 0) continue;  // unreachable (possible pre-minimization)
    accepting[order[s]] = d.accepting[s];
    for (int c = 0; c < num_chars; ++c) {
      transitions[static_cast<std::size_t>(order[s]) * num_chars + c] =
          order[d.next[s][c]];
    }
  }
  return Dfa(std::move(alphabet), std::move(accepting),
             std::move(transitions));
}

Dfa finish(Alphabet alphabet, const RawDfa& d) {
  const int num_chars = static_cast<int>(d.next[0].size());
  return canonicalize(std::move(alphabet), minimize(d, num_chars));
}

void require_same_alphabet(const Dfa& x, const Dfa& y) {
  if (!(x.alphabet() == y.alphabet())) {
    throw Error(ErrorCode::kAlphabetMismatch,
                "operands use different alphabets: " + x.alphabet().id() +
                    " vs " + y.alphabet().id());
  }
}

RawDfa product(const Dfa& x, const Dfa& y, bool accept_union) {
  const int num_chars = x.alphabet().size();
  std::map<std::pair<int, int>, int> ids;
  std::deque<std::pair<int, int>> queue;
  RawDfa out;

  auto intern = [&](int sx, int sy) {
    auto [it, inserted] = ids.try_emplace({sx, sy},
                                          static_cast<int>(ids.size()));
    if (inserted) {
      queue.emplace_back(sx, sy);
      const bool ax = x.is_accepting(sx);
      const bool ay = y.is_accepting(sy);
      out.accepting.push_back(accept_union ? (ax || ay) : (ax && ay));
      out.next.emplace_back(num_chars, 0);
    }
    return it->second;
  };

  out.start = intern(x.start_state(), y.start_state());
  while (!queue.empty()) {
    auto [sx, sy] = queue.front();
    queue.pop_front();
    const int id = ids.at({sx, sy});
    for (int c = 0; c < num_chars; ++c) {
      out.next[id][c] = intern(x.next_state(sx, c), y.next_state(sy, c));
    }
  }
  return out;
}

}  // namespace

Dfa::Dfa(Alphabet alphabet, std::vector<bool> accepting,
         std::vector<int> transitions)
    : alphabet_(std::move(alphabet)),
      accepting_(std::move(accepting)),
      transitions_(std::move(transitions)) {}

bool Dfa::accepts(const std::string& text) const {
  int state = start_state();
  for (char c : text) {
    const int index = alphabet_.index_of(c);
    if (index < 0) {
      throw Error(ErrorCode::kCharOutsideAlphabet,
                  std::string("character '") + c + "' is outside alphabet " +
                      alphabet_.id());
    }
    state = next_state(state, index);
  }
  return accepting_[state];
}

std::string Dfa::canonical_key() const {
  std::ostringstream key;
  key << alphabet_.id() << '|';
  for (bool a : accepting_) key << (a ? '1' : '0');
  key << '|';
  for (int t : transitions_) key << t << ',';
  return key.str();
}

Dfa compile_glob(const std::string& pattern, const Alphabet& a,
                 CaseFold fold) {
  const std::string pat =
      fold == CaseFold::kAsciiLower ? ascii_lower(pattern) : pattern;
  a.require_pattern_chars(pat);
  const int n = static_cast<int>(pat.size());
  const int num_chars = a.size();

  // Fold each alphabet character once; with CaseFold::kNone this is the
  // identity.
  std::string effective(a.characters());
  if (fold == CaseFold::kAsciiLower) effective = ascii_lower(effective);

  // Subset construction over sets of pattern positions. Position i means
  // "the first i pattern characters are matched"; a `*` position may absorb
  // any character, and the epsilon closure skips over stars.
  auto close = [&](const std::set<int>& positions) {
    std::vector<int> out;
    std::set<int> seen;
    for (int i : positions) {
      int j = i;
      while (seen.insert(j).second) {
        out.push_back(j);
        if (j < n && pat[j] == '*') {
          ++j;
        } else {
          break;
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  auto step = [&](const std::vector<int>& closed, char c) {
    std::set<int> out;
    for (int i : closed) {
      if (i >= n) continue;
      if (pat[i] == '*') {
        out.insert(i);
      } else if (pat[i] == '?' || pat[i] == c) {
        out.insert(i + 1);
      }
    }
    return close(out);
  };

  std::map<std::vector<int>, int> ids;
  std::deque<std::vector<int>> queue;
  RawDfa raw;
  auto intern = [&](std::vector<int> positions) {
    auto [it, inserted] =
        ids.try_emplace(std::move(positions), static_cast<int>(ids.size()));
    if (inserted) {
      queue.push_back(it->first);
      raw.accepting.push_back(!it->first.empty() && it->first.back() == n);
      raw.next.emplace_back(num_chars, 0);
    }
    return it->second;
  };

  raw.start = intern(close({0}));
  while (!queue.empty()) {
    std::vector<int> positions = queue.front();
    queue.pop_front();
    const int id = ids.at(positions);
    for (int c = 0; c < num_chars; ++c) {
      raw.next[id][c] = intern(step(positions, effective[c]));
    }
  }
  return finish(a, raw);
}

Dfa empty_language(const Alphabet& a) {
  RawDfa raw;
  raw.accepting = {false};
  raw.next = {std::vector<int>(a.size(), 0)};
  return finish(a, raw);
}

Dfa all_strings(const Alphabet& a) {
  RawDfa raw;
  raw.accepting = {true};
  raw.next = {std::vector<int>(a.size(), 0)};
  return finish(a, raw);
}

Dfa unite(const Dfa& x, const Dfa& y) {
  require_same_alphabet(x, y);
  return finish(x.alphabet(), product(x, y, /*accept_union=*/true));
}

Dfa intersect(const Dfa& x, const Dfa& y) {
  require_same_alphabet(x, y);
  return finish(x.alphabet(), product(x, y, /*accept_union=*/false));
}

Dfa complement(const Dfa& x) {
  // Transition functions are total, so complement is an accepting-set flip.
  RawDfa raw;
  const int num_chars = x.alphabet().size();
  raw.start = x.start_state();
  raw.accepting.resize(x.num_states());
  raw.next.assign(x.num_states(), std::vector<int>(num_chars, 0));
  for (int s = 0; s < x.num_states(); ++s) {
    raw.accepting[s] = !x.is_accepting(s);
    for (int c = 0; c < num_chars; ++c) raw.next[s][c] = x.next_state(s, c);
  }
  return finish(x.alphabet(), raw);
}

bool is_empty(const Dfa& x) {
  // Canonical Dfas keep only reachable states, so scanning suffices.
  for (int s = 0; s < x.num_states(); ++s) {
    if (x.is_accepting(s)) return false;
  }
  return true;
}

std::optional<std::string> shortest_accepted(const Dfa& x) {
  if (x.is_accepting(x.start_state())) return std::string();
  const int num_chars = x.alphabet().size();
  std::vector<std::pair<int, int>> via(x.num_states(), {-1, -1});
  std::deque<int> queue;
  via[x.start_state()] = {x.start_state(), -1};
  queue.push_back(x.start_state());
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    for (int c = 0; c < num_chars; ++c) {
      const int t = x.next_state(s, c);
      if (via[t].first >= 0) continue;
      via[t] = {s, c};
      if (x.is_accepting(t)) {
        std::string witness;
        for (int at = t; via[at].second >= 0; at = via[at].first) {
          witness.push_back(x.alphabet().characters()[via[at].second]);
        }
        std::reverse(witness.begin(), witness.end());
        return witness;
      }
      queue.push_back(t);
    }
  }
  return std::nullopt;
}

CountResult count_upto(const Dfa& x, int k) {
  if (k < 0) {
    throw Error(ErrorCode::kParamOutOfRange,
                "length bound must be non-negative");
  }
  const int num_chars = x.alphabet().size();
  std::vector<BigInt> paths(x.num_states());
  paths[x.start_state()] = 1;

  BigInt total = x.is_accepting(x.start_state()) ? 1 : 0;
  for (int length = 1; length <= k; ++length) {
    std::vector<BigInt> next(x.num_states());
    for (int s = 0; s < x.num_states(); ++s) {
      if (paths[s] == 0) continue;
      for (int c = 0; c < num_chars; ++c) {
        next[x.next_state(s, c)] += paths[s];
      }
    }
    paths.swap(next);
    for (int s = 0; s < x.num_states(); ++s) {
      if (x.is_accepting(s)) total += paths[s];
    }
  }
  return {std::move(total), k};
}

int glob_min_length(const std::string& pattern) {
  int length = 0;
  for (char c : pattern) {
    if (c != '*') ++length;
  }
  return length;
}

std::string to_dot(const Dfa& x) {
  // Group parallel edges and compress their labels into character ranges so
  // automata over the full alphabet stay readable.
  auto label = [&](const std::vector<int>& chars) {
    const std::string& members = x.alphabet().characters();
    std::string out;
    std::size_t i = 0;
    while (i < chars.size()) {
      std::size_t j = i;
      while (j + 1 < chars.size() && chars[j + 1] == chars[j] + 1) ++j;
      if (!out.empty()) out += ',';
      out += members[chars[i]];
      if (j > i + 1) out += '-';
      if (j > i) out += members[chars[j]];
      i = j + 1;
    }
    return out;
  };

  std::ostringstream dot;
  dot << "digraph dfa {\n  rankdir=LR;\n  node [shape=circle];\n"
      << "  __start [shape=point];\n  __start -> s0;\n";
  for (int s = 0; s < x.num_states(); ++s) {
    dot << "  s" << s << " [label=\"" << s << '"'
        << (x.is_accepting(s) ? ", shape=doublecircle" : "") << "];\n";
  }
  for (int s = 0; s < x.num_states(); ++s) {
    std::map<int, std::vector<int>> edges;
    for (int c = 0; c < x.alphabet().size(); ++c) {
      edges[x.next_state(s, c)].push_back(c);
    }
    for (const auto& [target, chars] : edges) {
      dot << "  s" << s << " -> s" << target << " [label=\"" << label(chars)
          << "\"];\n";
    }
  }
  dot << "}\n";
  return dot.str();
}

}  // namespace policylab
