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
// Prompt construction, policy synthesis backends, and extraction of a
// policy from a raw model response.
//
// Three prompt families describe the same access rules at different levels
// of specificity: concrete request lists, coarse natural language, and the
// fine-grained DSL. Their headers are fixed strings — tooling and tests
// depend on them byte for byte.
//
// Backends are pluggable so experiments do not depend on a live model:
// `http` speaks the common chat-completion protocol, `replay` serves
// recorded responses keyed by prompt hash, `oracle` deterministically
// compiles the prompt's source into a correct policy (the
// perfect-synthesizer control), and `mutant` produces an over-permissive
// policy that forgets denials (the negative control). Every synthesis call
// is recorded: one backend call per invocation, raw response preserved
// losslessly before any parsing.

#ifndef POLICYLAB_SYNTH_HPP_
#define POLICYLAB_SYNTH_HPP_

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "policylab/policy.hpp"
#include "policylab/specgen.hpp"

namespace policylab {

enum class PromptKind { kConcreteRequest, kCoarseGrained, kFineGrainedSyntax };

// Stable names: "concrete-request", "coarse-grained", "fine-grained-syntax".
const char* prompt_kind_name(PromptKind kind);
std::optional<PromptKind> prompt_kind_from_name(const std::string& name);

struct Prompt {
  PromptKind kind = PromptKind::kConcreteRequest;
  std::string text;
  std::string source_id;  // spec or corpus identifier the prompt was built from
};

// Fixed prompt headers. kConcreteRequestHeader opens concrete-request
// prompts; kDescriptionHeader opens both description-based families, and
// fine-grained prompts additionally end with kAccountIdNote.
inline constexpr char kConcreteRequestHeader[] =
    "Create an AWS IAM policy that incorporates all of the following "
    "requests. Return only the JSON policy, nothing else:";
inline constexpr char kDescriptionHeader[] =
    "Create an AWS IAM policy based on this description. Return only the "
    "JSON policy, nothing else:";
inline constexpr char kAccountIdNote[] =
    "*Note: Use ACCOUNT_ID as placeholder in ARNs";

// Builds a concrete-request prompt from a specification: the header, an
// "Allowed requests:" section with one single-line JSON object per request
// in specification order, and a "Denied requests:" section likewise. Only
// kind == kConcreteRequest is compatible (Error{kKindSourceMismatch}).
Prompt build_prompt(PromptKind kind, const RequestSpec& spec,
                    const std::string& source_id);

// Builds a description prompt from a corpus entry: the coarse text verbatim
// for kCoarseGrained, or the canonically rendered DSL spec plus the
// ACCOUNT_ID note for kFineGrainedSyntax. kConcreteRequest is incompatible
// (Error{kKindSourceMismatch}).
Prompt build_prompt(PromptKind kind, const CorpusEntry& entry);

enum class ExtractionStatus {
  kOk,
  kNoJsonFound,         // nothing brace-balanced mentioning "Statement"
  kMalformedJson,       // candidate found but not valid JSON / schema
  kUnsupportedFeature,  // candidate valid but outside the policy subset
};

const char* extraction_status_name(ExtractionStatus status);

struct Extraction {
  ExtractionStatus status = ExtractionStatus::kNoJsonFound;
  std::optional<Policy> policy;  // engaged iff status == kOk
  int policy_candidates = 0;     // how many policy-shaped objects appeared
  std::string detail;            // parse error context on failure
};

// Pulls a policy out of a raw response that may wrap it in prose or code
// fences: the first balanced top-level JSON object mentioning "Statement"
// is parsed through the policy codec. Failures are values, never
// exceptions — refusals and malformed output are experimental results.
// When several policy-shaped objects appear, the first is taken and the
// multiplicity reported.
Extraction extract_policy(const std::string& raw);

// A synthesis backend turns a prompt into a raw textual response. complete()
// performs exactly one upstream call — no silent retries, so zero-shot
// stays zero-shot — and throws Error{kBackendUnreachable} when no response
// can be obtained. Implementations must be safe for concurrent complete()
// calls.
class SynthesisBackend {
 public:
  virtual ~SynthesisBackend() = default;
  virtual std::string id() const = 0;
  virtual std::string complete(const Prompt& prompt) = 0;
};

// Resolves prompt source ids back to the specs or corpus entries they were
// built from, for backends that construct policies from the source itself.
// Registration is not thread-safe; register everything before concurrent
// synthesis starts.
class SourceCatalog {
 public:
  void add_spec(const std::string& id, RequestSpec spec);
  void add_entry(CorpusEntry entry);

  const RequestSpec* find_spec(const std::string& id) const;
  const CorpusEntry* find_entry(const std::string& id) const;

 private:
  std::map<std::string, RequestSpec> specs_;
  std::map<std::string, CorpusEntry> entries_;
};

// A policy that classifies the specification perfectly by construction:
// one exact-literal Allow statement per allowed request and one exact
// Deny per denied request.
Policy perfect_policy(const RequestSpec& spec);

// Perfect synthesizer ("oracle"): corpus sources compile through the DSL
// compiler; spec sources become perfect_policy(). The returned text is the
// serialized policy, exactly as an ideally obedient model would answer.
class OracleBackend : public SynthesisBackend {
 public:
  explicit OracleBackend(const SourceCatalog& catalog) : catalog_(catalog) {}
  std::string id() const override { return "oracle"; }
  std::string complete(const Prompt& prompt) override;

 private:
  const SourceCatalog& catalog_;
};

// Over-generalizing negative control ("mutant"): grants every distinct
// (principal, action) pair seen among the allowed requests on every
// resource, and forgets denials entirely. Corpus sources compile through
// the DSL compiler with Deny lines dropped. Useful as the classifier
// counterpart of a model that ignores deny instructions.
class MutantBackend : public SynthesisBackend {
 public:
  explicit MutantBackend(const SourceCatalog& catalog) : catalog_(catalog) {}
  std::string id() const override { return "mutant"; }
  std::string complete(const Prompt& prompt) override;

 private:
  const SourceCatalog& catalog_;
};

// Serves recorded responses from `<dir>/<fnv1a64_hex(prompt text)>.txt`.
// A missing recording is kBackendUnreachable, with the expected file name
// in the message to ease fixture authoring.
class ReplayBackend : public SynthesisBackend {
 public:
  explicit ReplayBackend(std::filesystem::path dir) : dir_(std::move(dir)) {}
  std::string id() const override { return "replay"; }
  std::string complete(const Prompt& prompt) override;

 private:
  std::filesystem::path dir_;
};

// Generic chat-completion client configuration, read from the environment:
// POLICYLAB_API_ENDPOINT (full URL of the completion route), POLICYLAB_MODEL,
// POLICYLAB_API_KEY (optional bearer token), POLICYLAB_TEMPERATURE
// (optional, default 0 — the most deterministic setting the protocol
// offers).
struct HttpBackendConfig {
  std::string endpoint;
  std::string model;
  std::string api_key;
  double temperature = 0.0;
  int timeout_seconds = 120;

  // Error{kConfigError} when endpoint or model is unset.
  static HttpBackendConfig from_environment();
};

class HttpBackend : public SynthesisBackend {
 public:
  explicit HttpBackend(HttpBackendConfig config);
  std::string id() const override { return "http:" + config_.model; }
  std::string complete(const Prompt& prompt) override;

 private:
  HttpBackendConfig config_;
};

// One synthesis attempt, recorded in full.
struct SynthesisRecord {
  Prompt prompt;
  std::string raw_response;
  Extraction extraction;
  std::string backend_id;
  std::string timestamp;  // ISO 8601 UTC, taken when the call started
  double latency_seconds = 0.0;
};

// Runs one backend call and extraction. The raw response is captured before
// any parsing; extraction failures land in the record, transport failures
// propagate as Error{kBackendUnreachable}.
SynthesisRecord synthesize(const Prompt& prompt, SynthesisBackend& backend);

// Append-only JSON-lines transcript store, safe for concurrent writers.
// One record per line; prompt and response are base64-encoded so any byte
// content survives.
class TranscriptSink {
 public:
  explicit TranscriptSink(const std::filesystem::path& file);
  void append(const SynthesisRecord& record);

 private:
  std::mutex mutex_;
  std::ofstream out_;
};

}  // namespace policylab

#endif  // POLICYLAB_SYNTH_HPP_
