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

#include "policylab/alphabet.hpp"

#include <algorithm>

#include "policylab/errors.hpp"

namespace policylab {
namespace {

std::string sorted_unique(const std::string& chars) {
  std::string out = chars;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const std::string& standard_characters() {
  static const std::string kChars =
      sorted_unique("abcdefghijklmnopqrstuvwxyz0123456789/:-_.,");
  return kChars;
}

std::string make_id(const std::string& characters) {
  const std::string& standard = standard_characters();
  if (characters == standard) return "default";
  if (std::includes(characters.begin(), characters.end(), standard.begin(),
                    standard.end())) {
    std::string extras;
    std::set_difference(characters.begin(), characters.end(),
                        standard.begin(), standard.end(),
                        std::back_inserter(extras));
    return "default+" + extras;
  }
  return "custom:" + characters;
}

}  // namespace

Alphabet Alphabet::standard() {
  return Alphabet(standard_characters(), "default");
}

Alphabet Alphabet::from_characters(const std::string& chars) {
  std::string members = sorted_unique(chars);
  if (members.empty()) {
    throw Error(ErrorCode::kConfigError, "alphabet must be non-empty");
  }
  if (members.find('*') != std::string::npos ||
      members.find('?') != std::string::npos) {
    throw Error(ErrorCode::kConfigError,
                "alphabet must not contain the glob operators '*' or '?'");
  }
  std::string id = make_id(members);
  return Alphabet(std::move(members), std::move(id));
}

Alphabet Alphabet::with_extra(const std::string& extra) const {
  std::string extended = characters_ + extra;
  if (sorted_unique(extended) == characters_) return *this;
  return from_characters(extended);
}

Alphabet::Alphabet(std::string characters, std::string id)
    : characters_(std::move(characters)), id_(std::move(id)) {
  index_.fill(-1);
  for (int i = 0; i < static_cast<int>(characters_.size()); ++i) {
    index_[static_cast<unsigned char>(characters_[i])] = i;
  }
}

void Alphabet::require_pattern_chars(const std::string& pattern) const {
  for (char c : pattern) {
    if (c == '*' || c == '?') continue;
    if (!contains(c)) {
      throw Error(ErrorCode::kCharOutsideAlphabet,
                  std::string("pattern character '") + c +
                      "' is outside alphabet " + id_);
    }
  }
}

void Alphabet::require_text_chars(const std::string& text) const {
  for (char c : text) {
    if (!contains(c)) {
      throw Error(ErrorCode::kCharOutsideAlphabet,
                  std::string("character '") + c + "' is outside alphabet " +
                      id_);
    }
  }
}

}  // namespace policylab
