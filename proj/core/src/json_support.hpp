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
// Library-internal JSON builders shared by the analyzer's renderers and the
// experiment harness's report writer. Not installed; public headers expose
// only rendered strings so the JSON library stays a private dependency.

#ifndef POLICYLAB_SRC_JSON_SUPPORT_HPP_
#define POLICYLAB_SRC_JSON_SUPPORT_HPP_

#include <nlohmann/json.hpp>

#include "policylab/analyzer.hpp"
#include "policylab/policy.hpp"

namespace policylab::detail {

using Json = nlohmann::ordered_json;

Json request_json(const Request& request);
Json count_json(const CountResult& count);
Json verdict_json(const ComparisonVerdict& verdict);
Json classification_json(const ClassificationResult& result);
Json rate_json(const BigRational& rate);

}  // namespace policylab::detail

#endif  // POLICYLAB_SRC_JSON_SUPPORT_HPP_
