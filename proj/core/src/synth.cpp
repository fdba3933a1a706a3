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

#include "policylab/synth.hpp"

#include <chrono>
#include <cstdlib>
#include <set>
#include <utility>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "policylab/errors.hpp"
#include "policylab/policy_json.hpp"
#include "policylab/util.hpp"

namespace policylab {
namespace {

using Json = nlohmann::ordered_json;

std::string request_line(const Request& request) {
  // Single-line JSON object with a fixed key order; prompts must be
  // byte-stable, so the formatting is spelled out here rather than left to
  // a serializer's defaults.
  return "{\"principal\": " + Json(request.principal).dump() +
         ", \"action\": " + Json(request.action).dump() +
         ", \"resource\": " + Json(request.resource).dump() + "}";
}

// One past the end of the brace-balanced span starting at `start` (which
// must index a '{'), or npos when the text ends first. JSON string
// contents, including escaped quotes, do not affect the balance.
std::size_t scan_balanced(const std::string& s, std::size_t start) {
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  for (std::size_t i = start; i < s.size(); ++i) {
    const char c = s[i];
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}') {
      if (--depth == 0) return i + 1;
    }
  }
  return std::string::npos;
}

}  // namespace

const char* prompt_kind_name(PromptKind kind) {
  switch (kind) {
    case PromptKind::kConcreteRequest: return "concrete-request";
    case PromptKind::kCoarseGrained: return "coarse-grained";
    case PromptKind::kFineGrainedSyntax: return "fine-grained-syntax";
  }
  return "unknown";
}

std::optional<PromptKind> prompt_kind_from_name(const std::string& name) {
  if (name == "concrete-request") return PromptKind::kConcreteRequest;
  if (name == "coarse-grained") return PromptKind::kCoarseGrained;
  if (name == "fine-grained-syntax") return PromptKind::kFineGrainedSyntax;
  return std::nullopt;
}

Prompt build_prompt(PromptKind kind, const RequestSpec& spec,
                    const std::string& source_id) {
  if (kind != PromptKind::kConcreteRequest) {
    throw Error(ErrorCode::kKindSourceMismatch,
                std::string(prompt_kind_name(kind)) +
                    " prompts are built from corpus entries, not request "
                    "specifications");
  }
  std::string text = kConcreteRequestHeader;
  text += '\n';
  if (!spec.allowed.empty()) {
    text += "\nAllowed requests:\n";
    for (const Request& request : spec.allowed) {
      text += request_line(request);
      text += '\n';
    }
  }
  if (!spec.denied.empty()) {
    text += "\nDenied requests:\n";
    for (const Request& request : spec.denied) {
      text += request_line(request);
      text += '\n';
    }
  }
  return {kind, std::move(text), source_id};
}

Prompt build_prompt(PromptKind kind, const CorpusEntry& entry) {
  if (kind == PromptKind::kConcreteRequest) {
    throw Error(ErrorCode::kKindSourceMismatch,
                "concrete-request prompts are built from request "
                "specifications, not corpus entries");
  }
  std::string text = kDescriptionHeader;
  text += "\n\n";
  if (kind == PromptKind::kCoarseGrained) {
    text += entry.coarse_description;
    text += '\n';
  } else {
    text += render_fgspec(entry.fg_spec);
    text += kAccountIdNote;
    text += '\n';
  }
  return {kind, std::move(text), entry.id};
}

const char* extraction_status_name(ExtractionStatus status) {
  switch (status) {
    case ExtractionStatus::kOk: return "Ok";
    case ExtractionStatus::kNoJsonFound: return "NoJsonFound";
    case ExtractionStatus::kMalformedJson: return "MalformedJson";
    case ExtractionStatus::kUnsupportedFeature: return "UnsupportedFeature";
  }
  return "Unknown";
}

Extraction extract_policy(const std::string& raw) {
  Extraction result;
  std::optional<std::string> first_policy_text;
  std::optional<std::string> first_malformed_detail;

  std::size_t i = 0;
  while ((i = raw.find('{', i)) != std::string::npos) {
    const std::size_t end = scan_balanced(raw, i);
    if (end == std::string::npos) {
      ++i;  // stray brace; keep looking past it
      continue;
    }
    const std::string span = raw.substr(i, end - i);
    if (span.find("\"Statement\"") == std::string::npos) {
      i = end;  // nothing policy-shaped in here, nested included
      continue;
    }
    const Json parsed = Json::parse(span, /*cb=*/nullptr,
                                    /*allow_exceptions=*/false);
    if (parsed.is_object() && parsed.contains("Statement")) {
      ++result.policy_candidates;
      if (!first_policy_text) first_policy_text = span;
      i = end;
    } else {
      // Invalid JSON, or a wrapper object holding the policy deeper down:
      // step inside the span and keep scanning.
      if (parsed.is_discarded() && !first_malformed_detail) {
        first_malformed_detail =
            "brace-balanced span mentioning \"Statement\" is not valid JSON";
      }
      ++i;
    }
  }

  if (!first_policy_text) {
    if (first_malformed_detail) {
      result.status = ExtractionStatus::kMalformedJson;
      result.detail = *first_malformed_detail;
    } else {
      result.status = ExtractionStatus::kNoJsonFound;
      result.detail = "no balanced JSON object with a \"Statement\" key";
    }
    return result;
  }

  try {
    result.policy = parse_policy(*first_policy_text);
    result.status = ExtractionStatus::kOk;
  } catch (const Error& error) {
    result.status = error.code() == ErrorCode::kUnsupportedFeature
                        ? ExtractionStatus::kUnsupportedFeature
                        : ExtractionStatus::kMalformedJson;
    result.detail = error.what();
  }
  return result;
}

void SourceCatalog::add_spec(const std::string& id, RequestSpec spec) {
  specs_.insert_or_assign(id, std::move(spec));
}

void SourceCatalog::add_entry(CorpusEntry entry) {
  std::string id = entry.id;
  entries_.insert_or_assign(std::move(id), std::move(entry));
}

const RequestSpec* SourceCatalog::find_spec(const std::string& id) const {
  const auto it = specs_.find(id);
  return it == specs_.end() ? nullptr : &it->second;
}

const CorpusEntry* SourceCatalog::find_entry(const std::string& id) const {
  const auto it = entries_.find(id);
  return it == entries_.end() ? nullptr : &it->second;
}

Policy perfect_policy(const RequestSpec& spec) {
  Policy policy;
  policy.version = "2012-10-17";
  auto literal_statement = [](const Request& request, Effect effect) {
    Statement statement;
    statement.effect = effect;
    statement.principal.patterns = {{request.principal}};
    statement.action.patterns = {{request.action}};
    statement.resource.patterns = {{request.resource}};
    return statement;
  };
  for (const Request& request : spec.allowed) {
    policy.statements.push_back(literal_statement(request, Effect::kAllow));
  }
  for (const Request& request : spec.denied) {
    policy.statements.push_back(literal_statement(request, Effect::kDeny));
  }
  return policy;
}

std::string OracleBackend::complete(const Prompt& prompt) {
  if (const CorpusEntry* entry = catalog_.find_entry(prompt.source_id)) {
    return serialize_policy(compile_fgspec(entry->fg_spec));
  }
  if (const RequestSpec* spec = catalog_.find_spec(prompt.source_id)) {
    return serialize_policy(perfect_policy(*spec));
  }
  throw Error(ErrorCode::kBackendUnreachable,
              "oracle backend has no source registered for id \"" +
                  prompt.source_id + "\"");
}

std::string MutantBackend::complete(const Prompt& prompt) {
  if (const CorpusEntry* entry = catalog_.find_entry(prompt.source_id)) {
    FgSpec spec = entry->fg_spec;
    std::erase_if(spec.lines, [](const FgLine& line) {
      return line.effect == Effect::kDeny;
    });
    return serialize_policy(compile_fgspec(spec));
  }
  if (const RequestSpec* spec = catalog_.find_spec(prompt.source_id)) {
    Policy policy;
    policy.version = "2012-10-17";
    std::set<std::pair<std::string, std::string>> seen;
    for (const Request& request : spec->allowed) {
      if (!seen.insert({request.principal, request.action}).second) continue;
      Statement statement;
      statement.effect = Effect::kAllow;
      statement.principal.patterns = {{request.principal}};
      statement.action.patterns = {{request.action}};
      statement.resource.patterns = {{"*"}};
      policy.statements.push_back(std::move(statement));
    }
    return serialize_policy(policy);
  }
  throw Error(ErrorCode::kBackendUnreachable,
              "mutant backend has no source registered for id \"" +
                  prompt.source_id + "\"");
}

std::string ReplayBackend::complete(const Prompt& prompt) {
  const std::filesystem::path file =
      dir_ / (fnv1a64_hex(prompt.text) + ".txt");
  if (!std::filesystem::is_regular_file(file)) {
    throw Error(ErrorCode::kBackendUnreachable,
                "no recorded response at " + file.string() + " for source \"" +
                    prompt.source_id + "\"");
  }
  return read_file(file);
}

HttpBackendConfig HttpBackendConfig::from_environment() {
  HttpBackendConfig config;
  if (const char* endpoint = std::getenv("POLICYLAB_API_ENDPOINT")) {
    config.endpoint = endpoint;
  }
  if (const char* model = std::getenv("POLICYLAB_MODEL")) {
    config.model = model;
  }
  if (const char* key = std::getenv("POLICYLAB_API_KEY")) {
    config.api_key = key;
  }
  if (const char* temperature = std::getenv("POLICYLAB_TEMPERATURE")) {
    config.temperature = std::strtod(temperature, nullptr);
  }
  if (config.endpoint.empty() || config.model.empty()) {
    throw Error(ErrorCode::kConfigError,
                "http backend needs POLICYLAB_API_ENDPOINT and "
                "POLICYLAB_MODEL set");
  }
  return config;
}

HttpBackend::HttpBackend(HttpBackendConfig config)
    : config_(std::move(config)) {
  if (config_.endpoint.empty() || config_.model.empty()) {
    throw Error(ErrorCode::kConfigError,
                "http backend needs an endpoint and a model");
  }
}

std::string HttpBackend::complete(const Prompt& prompt) {
  // Split the endpoint into scheme://host[:port] and route.
  const std::size_t scheme_end = config_.endpoint.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::kConfigError,
                "endpoint must be a full URL: " + config_.endpoint);
  }
  const std::size_t path_start =
      config_.endpoint.find('/', scheme_end + 3);
  const std::string base = config_.endpoint.substr(0, path_start);
  const std::string route = path_start == std::string::npos
                                ? "/"
                                : config_.endpoint.substr(path_start);

  httplib::Client client(base);
  client.set_connection_timeout(config_.timeout_seconds, 0);
  client.set_read_timeout(config_.timeout_seconds, 0);
  client.set_write_timeout(config_.timeout_seconds, 0);

  Json body = Json::object();
  body["model"] = config_.model;
  Json message = Json::object();
  message["role"] = "user";
  message["content"] = prompt.text;
  body["messages"] = Json::array({std::move(message)});
  body["temperature"] = config_.temperature;

  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }

  httplib::Result response =
      client.Post(route, headers, body.dump(), "application/json");
  if (!response) {
    throw Error(ErrorCode::kBackendUnreachable,
                "request to " + config_.endpoint + " failed: " +
                    httplib::to_string(response.error()));
  }
  if (response->status != 200) {
    throw Error(ErrorCode::kBackendUnreachable,
                "request to " + config_.endpoint + " returned status " +
                    std::to_string(response->status) + ": " +
                    response->body.substr(0, 512));
  }

  const Json parsed = Json::parse(response->body, /*cb=*/nullptr,
                                  /*allow_exceptions=*/false);
  if (parsed.is_discarded() || !parsed.contains("choices") ||
      !parsed.at("choices").is_array() || parsed.at("choices").empty()) {
    throw Error(ErrorCode::kBackendUnreachable,
                "response from " + config_.endpoint +
                    " is not a chat completion: " +
                    response->body.substr(0, 512));
  }
  const Json& first = parsed.at("choices").at(0);
  if (!first.contains("message") || !first.at("message").contains("content") ||
      !first.at("message").at("content").is_string()) {
    throw Error(ErrorCode::kBackendUnreachable,
                "completion choice carries no message content");
  }
  return first.at("message").at("content").get<std::string>();
}

SynthesisRecord synthesize(const Prompt& prompt, SynthesisBackend& backend) {
  SynthesisRecord record;
  record.prompt = prompt;
  record.backend_id = backend.id();
  record.timestamp = iso8601_utc_now();
  const auto started = std::chrono::steady_clock::now();
  record.raw_response = backend.complete(prompt);
  record.latency_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  record.extraction = extract_policy(record.raw_response);
  return record;
}

TranscriptSink::TranscriptSink(const std::filesystem::path& file) {
  if (file.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(file.parent_path(), ec);
  }
  out_.open(file, std::ios::binary | std::ios::app);
  if (!out_) {
    throw Error(ErrorCode::kIoFailure,
                "cannot open transcript file " + file.string());
  }
}

void TranscriptSink::append(const SynthesisRecord& record) {
  Json line = Json::object();
  line["timestamp"] = record.timestamp;
  line["backend"] = record.backend_id;
  line["kind"] = prompt_kind_name(record.prompt.kind);
  line["source_id"] = record.prompt.source_id;
  line["latency_seconds"] = record.latency_seconds;
  line["prompt_b64"] = base64_encode(record.prompt.text);
  line["response_b64"] = base64_encode(record.raw_response);
  line["extraction"] = extraction_status_name(record.extraction.status);
  line["policy_candidates"] = record.extraction.policy_candidates;
  line["detail"] = record.extraction.detail;

  const std::string serialized = line.dump();
  std::lock_guard<std::mutex> lock(mutex_);
  out_ << serialized << '\n';
  out_.flush();
}

}  // namespace policylab
