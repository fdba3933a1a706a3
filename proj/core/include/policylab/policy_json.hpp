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
// JSON codec for the supported policy subset.
//
// Accepted field names: Version, Statement, Sid, Effect, Principal,
// NotPrincipal, Action, NotAction, Resource, NotResource. Parsing is
// generous where real-world documents vary (scalar-vs-list values, a single
// statement object instead of a list, `{"AWS": ...}` principal maps, absent
// Principal) and normalizes all of it into the uniform Policy model.
// Anything outside the subset — most notably Condition blocks — raises
// UnsupportedFeature rather than MalformedJson, so callers can tell "broken
// JSON" apart from "valid IAM we do not model".
//
// Serialization is canonical: compact separators, fixed key order, scalar
// strings for one-element pattern lists. parse(serialize(p)) == p for every
// normalized policy, and equal policies serialize to byte-equal documents.

#ifndef POLICYLAB_POLICY_JSON_HPP_
#define POLICYLAB_POLICY_JSON_HPP_

#include <string>

#include "policylab/policy.hpp"

namespace policylab {

// Parses a policy document. Throws Error{kMalformedJson} for syntactically
// broken or structurally invalid documents and Error{kUnsupportedFeature}
// for well-formed documents using constructs outside the subset (Condition,
// unknown keys, non-AWS principal maps).
Policy parse_policy(const std::string& json_text);

// Canonical compact serialization (see file comment). The empty policy
// serializes to {"Version":"2012-10-17","Statement":[]} with its version
// field substituted verbatim.
std::string serialize_policy(const Policy& policy);

}  // namespace policylab

#endif  // POLICYLAB_POLICY_JSON_HPP_
