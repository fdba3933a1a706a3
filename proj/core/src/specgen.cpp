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

#include "policylab/specgen.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include <nlohmann/json.hpp>

#include "policylab/errors.hpp"
#include "policylab/policy_json.hpp"
#include "policylab/util.hpp"

namespace policylab {
namespace {

using Json = nlohmann::ordered_json;

void require_range(int lo, int hi, const char* what) {
  if (lo < 1 || hi < lo) {
    throw Error(ErrorCode::kParamOutOfRange,
                std::string(what) + " range [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "] must satisfy 1 <= min <= max");
  }
}

void require_pool(const std::vector<std::string>& pool, const char* what) {
  if (pool.empty()) {
    throw Error(ErrorCode::kParamOutOfRange,
                std::string(what) + " pool must be non-empty");
  }
}

void validate_params(const SpecGenParams& params) {
  require_range(params.min_allowed, params.max_allowed, "allowed count");
  require_range(params.min_denied, params.max_denied, "denied count");
  require_range(params.min_depth, params.max_depth, "depth");
  require_pool(params.principals, "principal");
  require_pool(params.actions, "action");
  require_pool(params.buckets, "bucket");
  require_pool(params.directories, "directory");
  require_pool(params.files, "file");
}

const std::string& pick(DeterministicRng& rng,
                        const std::vector<std::string>& pool) {
  return pool[rng.below(pool.size())];
}

Request draw_request(DeterministicRng& rng, const SpecGenParams& params) {
  Request request;
  request.principal = pick(rng, params.principals);
  request.action = pick(rng, params.actions);
  std::string resource = pick(rng, params.buckets);
  const std::uint64_t depth = rng.between(params.min_depth, params.max_depth);
  for (std::uint64_t i = 0; i < depth; ++i) {
    resource += "/" + pick(rng, params.directories);
  }
  resource += "/" + pick(rng, params.files);
  request.resource = std::move(resource);
  return request;
}

Json request_to_json(const Request& request) {
  Json json = Json::object();
  json["principal"] = request.principal;
  json["action"] = request.action;
  json["resource"] = request.resource;
  return json;
}

Request request_from_json(const Json& json) {
  if (!json.is_object() || !json.contains("principal") ||
      !json.contains("action") || !json.contains("resource")) {
    throw Error(ErrorCode::kMalformedJson,
                "request objects need principal, action, and resource");
  }
  for (const char* key : {"principal", "action", "resource"}) {
    if (!json.at(key).is_string()) {
      throw Error(ErrorCode::kMalformedJson,
                  std::string("request ") + key + " must be a string");
    }
  }
  return {json.at("principal").get<std::string>(),
          json.at("action").get<std::string>(),
          json.at("resource").get<std::string>()};
}

}  // namespace

RequestSpec generate_request_spec(std::uint64_t seed,
                                  const SpecGenParams& params) {
  validate_params(params);
  DeterministicRng rng(seed);
  RequestSpec spec;
  spec.seed = seed;
  spec.params = params;

  const std::uint64_t allowed_count =
      rng.between(params.min_allowed, params.max_allowed);
  const std::uint64_t denied_count =
      rng.between(params.min_denied, params.max_denied);

  using Key = std::tuple<std::string, std::string, std::string>;
  std::set<Key> used;
  auto fill = [&](std::vector<Request>& out, std::uint64_t count) {
    // Resample collisions; cap attempts so degenerate custom pools cannot
    // spin forever.
    const std::uint64_t max_attempts = 1000 * (count + 1);
    std::uint64_t attempts = 0;
    while (out.size() < count) {
      if (++attempts > max_attempts) {
        throw Error(ErrorCode::kParamOutOfRange,
                    "pools are too small to draw " + std::to_string(count) +
                        " distinct requests");
      }
      Request request = draw_request(rng, params);
      if (!used.insert({request.principal, request.action, request.resource})
               .second) {
        continue;
      }
      out.push_back(std::move(request));
    }
  };
  fill(spec.allowed, allowed_count);
  fill(spec.denied, denied_count);
  return spec;
}

std::string render_request_spec_json(const RequestSpec& spec) {
  Json json = Json::object();
  json["seed"] = spec.seed;
  Json params = Json::object();
  params["allowed_count_range"] =
      Json::array({spec.params.min_allowed, spec.params.max_allowed});
  params["denied_count_range"] =
      Json::array({spec.params.min_denied, spec.params.max_denied});
  params["depth_range"] =
      Json::array({spec.params.min_depth, spec.params.max_depth});
  json["params"] = std::move(params);
  Json allowed = Json::array();
  for (const Request& request : spec.allowed) {
    allowed.push_back(request_to_json(request));
  }
  Json denied = Json::array();
  for (const Request& request : spec.denied) {
    denied.push_back(request_to_json(request));
  }
  json["allowed"] = std::move(allowed);
  json["denied"] = std::move(denied);
  return json.dump(2) + "\n";
}

RequestSpec parse_request_spec_json(const std::string& json_text) {
  Json json = Json::parse(json_text, /*cb=*/nullptr,
                          /*allow_exceptions=*/false);
  if (json.is_discarded() || !json.is_object()) {
    throw Error(ErrorCode::kMalformedJson,
                "request specification must be a JSON object");
  }
  RequestSpec spec;
  if (json.contains("seed")) {
    if (!json.at("seed").is_number_unsigned() &&
        !json.at("seed").is_number_integer()) {
      throw Error(ErrorCode::kMalformedJson, "seed must be an integer");
    }
    spec.seed = json.at("seed").get<std::uint64_t>();
  }
  if (json.contains("params")) {
    const Json& params = json.at("params");
    auto read_range = [&](const char* key, int& lo, int& hi) {
      if (!params.contains(key)) return;
      const Json& range = params.at(key);
      if (!range.is_array() || range.size() != 2 ||
          !range[0].is_number_integer() || !range[1].is_number_integer()) {
        throw Error(ErrorCode::kMalformedJson,
                    std::string(key) + " must be a [min, max] pair");
      }
      lo = range[0].get<int>();
      hi = range[1].get<int>();
    };
    read_range("allowed_count_range", spec.params.min_allowed,
               spec.params.max_allowed);
    read_range("denied_count_range", spec.params.min_denied,
               spec.params.max_denied);
    read_range("depth_range", spec.params.min_depth, spec.params.max_depth);
  }
  for (const char* key : {"allowed", "denied"}) {
    if (!json.contains(key)) {
      throw Error(ErrorCode::kMalformedJson,
                  std::string("request specification is missing the ") + key +
                      " list");
    }
    if (!json.at(key).is_array()) {
      throw Error(ErrorCode::kMalformedJson,
                  std::string(key) + " must be a list");
    }
    std::vector<Request>& out = key[0] == 'a' ? spec.allowed : spec.denied;
    for (const Json& entry : json.at(key)) {
      out.push_back(request_from_json(entry));
    }
  }
  return spec;
}

CorpusEntry load_corpus_entry(const std::filesystem::path& dir) {
  CorpusEntry entry;
  entry.id = dir.filename().string();
  for (const char* name :
       {"policy.json", "coarse.txt", "spec.fgs", "meta.json"}) {
    if (!std::filesystem::is_regular_file(dir / name)) {
      throw Error(ErrorCode::kMissingFile,
                  "corpus entry " + entry.id + " is missing " + name);
    }
  }
  entry.ground_truth = parse_policy(read_file(dir / "policy.json"));
  entry.coarse_description = read_file(dir / "coarse.txt");
  while (!entry.coarse_description.empty() &&
         (entry.coarse_description.back() == '\n' ||
          entry.coarse_description.back() == '\r' ||
          entry.coarse_description.back() == ' ')) {
    entry.coarse_description.pop_back();
  }
  entry.fg_spec = parse_fgspec(read_file(dir / "spec.fgs"));

  const Json meta = Json::parse(read_file(dir / "meta.json"),
                                /*cb=*/nullptr, /*allow_exceptions=*/false);
  if (meta.is_discarded() || !meta.is_object()) {
    throw Error(ErrorCode::kMalformedJson,
                "corpus entry " + entry.id + " has malformed meta.json");
  }
  if (meta.contains("tags")) {
    for (const Json& tag : meta.at("tags")) {
      if (tag.is_string()) entry.tags.push_back(tag.get<std::string>());
    }
  }
  return entry;
}

std::vector<CorpusEntry> load_corpus(
    const std::filesystem::path& corpus_dir) {
  std::vector<CorpusEntry> entries;
  if (!std::filesystem::is_directory(corpus_dir)) return entries;

  std::vector<std::filesystem::path> dirs;
  for (const auto& item : std::filesystem::directory_iterator(corpus_dir)) {
    if (item.is_directory()) dirs.push_back(item.path());
  }
  std::sort(dirs.begin(), dirs.end());

  for (const std::filesystem::path& dir : dirs) {
    entries.push_back(load_corpus_entry(dir));
  }
  return entries;
}

CorpusValidation validate_corpus(const std::vector<CorpusEntry>& entries) {
  CorpusValidation report;
  for (const CorpusEntry& entry : entries) {
    const Policy compiled = compile_fgspec(entry.fg_spec);
    const ComparisonVerdict verdict = compare(compiled, entry.ground_truth);
    CorpusValidationRow row;
    row.id = entry.id;
    row.relation = verdict.relation;
    row.ok = verdict.relation == Relation::kEquivalent;
    if (!row.ok) report.all_ok = false;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace policylab
