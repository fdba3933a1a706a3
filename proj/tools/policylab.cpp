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
// policylab — command-line front end for the policy toolkit.
//
// Exit codes: 0 success; 1 validation or comparison failure (malformed
// input files, non-equivalent policies, misclassified requests, corpus
// validation errors); 2 configuration error (bad flags, missing files,
// unusable backend or environment).

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "policylab/analyzer.hpp"
#include "policylab/errors.hpp"
#include "policylab/fgdsl.hpp"
#include "policylab/harness.hpp"
#include "policylab/policy_json.hpp"
#include "policylab/request_set.hpp"
#include "policylab/specgen.hpp"
#include "policylab/synth.hpp"
#include "policylab/util.hpp"

namespace {

using policylab::Error;
using policylab::ErrorCode;
using Json = nlohmann::ordered_json;

// Errors rooted in the invocation itself (rather than in the policies or
// specifications under test) map to exit code 2.
bool is_configuration_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfigError:
    case ErrorCode::kMissingFile:
    case ErrorCode::kIoFailure:
    case ErrorCode::kKindSourceMismatch:
    case ErrorCode::kParamOutOfRange:
      return true;
    default:
      return false;
  }
}

void write_output(const std::optional<std::string>& out,
                  const std::string& content) {
  if (out) {
    policylab::write_file(*out, content);
  } else {
    std::cout << content;
  }
}

policylab::Policy load_policy(const std::string& path) {
  return policylab::parse_policy(policylab::read_file(path));
}

// Seed lists accept single values and inclusive ranges: "1,2,10..20".
std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.empty()) continue;
    try {
      const std::size_t dots = item.find("..");
      if (dots == std::string::npos) {
        seeds.push_back(std::stoull(item));
      } else {
        const std::uint64_t lo = std::stoull(item.substr(0, dots));
        const std::uint64_t hi = std::stoull(item.substr(dots + 2));
        if (hi < lo) {
          throw Error(ErrorCode::kConfigError,
                      "seed range " + item + " is descending");
        }
        for (std::uint64_t seed = lo; seed <= hi; ++seed) {
          seeds.push_back(seed);
        }
      }
    } catch (const std::invalid_argument&) {
      throw Error(ErrorCode::kConfigError, "bad seed value: " + item);
    } catch (const std::out_of_range&) {
      throw Error(ErrorCode::kConfigError, "seed out of range: " + item);
    }
  }
  if (seeds.empty()) {
    throw Error(ErrorCode::kConfigError, "no seeds given");
  }
  return seeds;
}

// Instantiates the backend named on the command line. Backends that build
// policies from the prompt's source (oracle, mutant) resolve through the
// given catalog; the harness registers sources there before running.
std::unique_ptr<policylab::SynthesisBackend> make_backend(
    const std::string& selector, const policylab::SourceCatalog& catalog) {
  if (selector == "oracle") {
    return std::make_unique<policylab::OracleBackend>(catalog);
  }
  if (selector == "mutant") {
    return std::make_unique<policylab::MutantBackend>(catalog);
  }
  if (selector.rfind("replay:", 0) == 0) {
    const std::string dir = selector.substr(7);
    if (dir.empty()) {
      throw Error(ErrorCode::kConfigError,
                  "replay backend needs a directory: replay:<dir>");
    }
    return std::make_unique<policylab::ReplayBackend>(dir);
  }
  if (selector == "http" || selector.rfind("http:", 0) == 0) {
    policylab::HttpBackendConfig config =
        policylab::HttpBackendConfig::from_environment();
    if (selector.size() > 5) config.model = selector.substr(5);
    return std::make_unique<policylab::HttpBackend>(std::move(config));
  }
  throw Error(ErrorCode::kConfigError,
              "unknown backend \"" + selector +
                  "\" (expected oracle, mutant, replay:<dir>, or http)");
}

struct CommonRunFlags {
  std::string backend;
  std::string report_dir;
  int jobs = 1;
  std::string transcript;
};

void add_run_flags(CLI::App* cmd, CommonRunFlags* flags) {
  cmd->add_option("--backend", flags->backend,
                  "oracle | mutant | replay:<dir> | http[:<model>]")
      ->required();
  cmd->add_option("--report-dir", flags->report_dir,
                  "directory for report.json and rows.csv")
      ->required();
  cmd->add_option("--jobs", flags->jobs, "parallel synthesis calls")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--transcript", flags->transcript,
                  "append synthesis transcripts to this JSONL file");
}

int run_rq1_command(const std::string& seeds_text,
                    const CommonRunFlags& flags) {
  policylab::SourceCatalog catalog;
  const auto backend = make_backend(flags.backend, catalog);
  std::unique_ptr<policylab::TranscriptSink> sink;
  policylab::HarnessOptions options;
  options.jobs = flags.jobs;
  if (!flags.transcript.empty()) {
    sink = std::make_unique<policylab::TranscriptSink>(flags.transcript);
    options.sink = sink.get();
  }
  const policylab::Rq1Result result =
      run_rq1(parse_seed_list(seeds_text), catalog, *backend, options);
  emit_report(result, flags.report_dir);
  std::cout << "rq1: " << result.rows.size() << " specs, "
            << result.extraction_failures << " extraction failures";
  if (result.mean_rate) {
    std::cout << ", mean rate " << policylab::format_rational(*result.mean_rate);
  }
  std::cout << "\nreport: " << flags.report_dir << "/report.json\n";
  return 0;
}

int run_compare_command(const std::string& experiment,
                        const std::string& corpus_dir,
                        const CommonRunFlags& flags) {
  const std::vector<policylab::CorpusEntry> corpus =
      policylab::load_corpus(corpus_dir);
  if (corpus.empty()) {
    throw Error(ErrorCode::kConfigError,
                "no corpus entries under " + corpus_dir);
  }
  policylab::SourceCatalog catalog;
  const auto backend = make_backend(flags.backend, catalog);
  std::unique_ptr<policylab::TranscriptSink> sink;
  policylab::HarnessOptions options;
  options.jobs = flags.jobs;
  if (!flags.transcript.empty()) {
    sink = std::make_unique<policylab::TranscriptSink>(flags.transcript);
    options.sink = sink.get();
  }
  const policylab::RqCompareResult result =
      experiment == "rq2" ? run_rq2(corpus, catalog, *backend, options)
                          : run_rq3(corpus, catalog, *backend, options);
  emit_report(result, flags.report_dir);
  std::cout << experiment << ": " << result.rows.size() << " entries, "
            << result.extraction_failures << " extraction failures\n";
  for (const auto& [relation, count] : result.distribution) {
    std::cout << "  " << policylab::relation_name(relation) << ": " << count
              << "\n";
  }
  std::cout << "report: " << flags.report_dir << "/report.json\n";
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{
      "policylab — synthesize, evaluate, and formally compare access "
      "control policies"};
  app.require_subcommand(1);
  int exit_code = 0;

  // gen-spec
  auto* gen = app.add_subcommand(
      "gen-spec", "Generate a deterministic request specification");
  std::uint64_t gen_seed = 0;
  std::optional<std::string> gen_out;
  gen->add_option("--seed", gen_seed, "RNG seed")->required();
  gen->add_option("--out", gen_out, "output file (default: stdout)");
  gen->callback([&] {
    const policylab::RequestSpec spec =
        policylab::generate_request_spec(gen_seed, {});
    write_output(gen_out, policylab::render_request_spec_json(spec));
  });

  // compile-dsl
  auto* compile = app.add_subcommand(
      "compile-dsl", "Compile a fine-grained DSL file to a policy");
  std::string compile_in;
  std::optional<std::string> compile_out;
  compile->add_option("--in", compile_in, "DSL input file")->required();
  compile->add_option("--out", compile_out, "output file (default: stdout)");
  compile->callback([&] {
    const policylab::FgSpec spec =
        policylab::parse_fgspec(policylab::read_file(compile_in));
    write_output(compile_out,
                 policylab::serialize_policy(policylab::compile_fgspec(spec)) +
                     "\n");
  });

  // eval
  auto* eval_cmd = app.add_subcommand(
      "eval", "Evaluate a specification's requests against a policy");
  std::string eval_policy;
  std::string eval_spec;
  eval_cmd->add_option("--policy", eval_policy, "policy JSON file")
      ->required();
  eval_cmd->add_option("--spec", eval_spec, "request specification JSON file")
      ->required();
  eval_cmd->callback([&] {
    const policylab::Policy policy = load_policy(eval_policy);
    const policylab::RequestSpec spec =
        policylab::parse_request_spec_json(policylab::read_file(eval_spec));
    const policylab::ClassificationResult result =
        policylab::classify_requests(policy, spec.allowed, spec.denied);
    std::cout << policylab::render_classification_json(result);
    if (result.correct_count != static_cast<int>(result.rows.size())) {
      exit_code = 1;
    }
  });

  // compare
  auto* cmp = app.add_subcommand(
      "compare", "Compare the permissiveness of two policies");
  std::string cmp_p1;
  std::string cmp_p2;
  std::optional<int> cmp_bound;
  cmp->add_option("--p1", cmp_p1, "first policy JSON file")->required();
  cmp->add_option("--p2", cmp_p2, "second policy JSON file")->required();
  cmp->add_option("--bound", cmp_bound,
                  "per-field length bound for counting (default: longest "
                  "literal + 5)");
  cmp->callback([&] {
    const policylab::Policy p1 = load_policy(cmp_p1);
    const policylab::Policy p2 = load_policy(cmp_p2);
    const policylab::Alphabet alphabet = policylab::covering_alphabet(
        policylab::Alphabet::standard(), {&p1, &p2});
    const int bound =
        cmp_bound ? *cmp_bound : policylab::default_compare_bound(p1, p2);
    const policylab::ComparisonVerdict verdict =
        policylab::compare(p1, p2, alphabet, bound);
    std::cout << policylab::render_verdict_json(verdict);
    if (verdict.relation != policylab::Relation::kEquivalent) exit_code = 1;
  });

  // count
  auto* count_cmd = app.add_subcommand(
      "count", "Count the requests a policy allows, up to a length bound");
  std::string count_policy;
  int count_bound = 0;
  count_cmd->add_option("--policy", count_policy, "policy JSON file")
      ->required();
  count_cmd
      ->add_option("--bound", count_bound, "per-field length bound")
      ->required()
      ->check(CLI::NonNegativeNumber);
  count_cmd->callback([&] {
    const policylab::Policy policy = load_policy(count_policy);
    const policylab::Alphabet alphabet = policylab::covering_alphabet(
        policylab::Alphabet::standard(), {&policy});
    const policylab::RequestSet allowed =
        policylab::denote(policy, alphabet);
    const policylab::CountResult result = allowed.count_upto(count_bound);
    Json out = Json::object();
    out["count"] = result.count.str();
    out["length_bound"] = result.length_bound;
    out["alphabet"] = alphabet.id();
    std::cout << out.dump(2) << "\n";
  });

  // prompt
  auto* prompt_cmd = app.add_subcommand(
      "prompt", "Build a synthesis prompt from a source");
  std::string prompt_kind;
  std::string prompt_source;
  std::optional<std::string> prompt_out;
  prompt_cmd
      ->add_option("--kind", prompt_kind,
                   "concrete-request | coarse-grained | fine-grained-syntax")
      ->required();
  prompt_cmd
      ->add_option("--source", prompt_source,
                   "specification JSON file (concrete-request) or corpus "
                   "entry directory (description kinds)")
      ->required();
  prompt_cmd->add_option("--out", prompt_out,
                         "output file (default: stdout)");
  prompt_cmd->callback([&] {
    const std::optional<policylab::PromptKind> kind =
        policylab::prompt_kind_from_name(prompt_kind);
    if (!kind) {
      throw Error(ErrorCode::kConfigError,
                  "unknown prompt kind \"" + prompt_kind + "\"");
    }
    policylab::Prompt prompt;
    if (*kind == policylab::PromptKind::kConcreteRequest) {
      const policylab::RequestSpec spec = policylab::parse_request_spec_json(
          policylab::read_file(prompt_source));
      prompt = policylab::build_prompt(
          *kind, spec, std::filesystem::path(prompt_source).stem().string());
    } else {
      const policylab::CorpusEntry entry =
          policylab::load_corpus_entry(prompt_source);
      prompt = policylab::build_prompt(*kind, entry);
    }
    write_output(prompt_out, prompt.text);
  });

  // synthesize
  auto* synth_cmd = app.add_subcommand(
      "synthesize", "Send one prompt to a backend and extract the policy");
  std::string synth_prompt;
  std::string synth_backend;
  std::string synth_kind = "concrete-request";
  synth_cmd->add_option("--prompt", synth_prompt, "prompt text file")
      ->required();
  synth_cmd
      ->add_option("--backend", synth_backend,
                   "oracle | mutant | replay:<dir> | http[:<model>]")
      ->required();
  synth_cmd->add_option(
      "--kind", synth_kind,
      "prompt kind label recorded with the call (default concrete-request)");
  synth_cmd->callback([&] {
    const std::optional<policylab::PromptKind> kind =
        policylab::prompt_kind_from_name(synth_kind);
    if (!kind) {
      throw Error(ErrorCode::kConfigError,
                  "unknown prompt kind \"" + synth_kind + "\"");
    }
    policylab::SourceCatalog catalog;
    const auto backend = make_backend(synth_backend, catalog);
    policylab::Prompt prompt;
    prompt.kind = *kind;
    prompt.text = policylab::read_file(synth_prompt);
    prompt.source_id = std::filesystem::path(synth_prompt).stem().string();
    const policylab::SynthesisRecord record =
        policylab::synthesize(prompt, *backend);
    Json out = Json::object();
    out["backend"] = record.backend_id;
    out["extraction"] =
        policylab::extraction_status_name(record.extraction.status);
    out["policy_candidates"] = record.extraction.policy_candidates;
    out["policy"] =
        record.extraction.policy
            ? Json::parse(policylab::serialize_policy(*record.extraction.policy))
            : Json(nullptr);
    out["detail"] = record.extraction.detail;
    out["response_b64"] = policylab::base64_encode(record.raw_response);
    std::cout << out.dump(2) << "\n";
    if (record.extraction.status != policylab::ExtractionStatus::kOk) {
      exit_code = 1;
    }
  });

  // rq1 / rq2 / rq3
  auto* rq1_cmd =
      app.add_subcommand("rq1", "Concrete-request synthesis experiment");
  CommonRunFlags rq1_flags;
  std::string rq1_seeds;
  add_run_flags(rq1_cmd, &rq1_flags);
  rq1_cmd->add_option("--seeds", rq1_seeds, "seed list, e.g. 1,2,10..20")
      ->required();
  rq1_cmd->callback([&] { exit_code = run_rq1_command(rq1_seeds, rq1_flags); });

  auto* rq2_cmd =
      app.add_subcommand("rq2", "Coarse-description synthesis experiment");
  CommonRunFlags rq2_flags;
  std::string rq2_corpus;
  add_run_flags(rq2_cmd, &rq2_flags);
  rq2_cmd->add_option("--corpus", rq2_corpus, "corpus directory")->required();
  rq2_cmd->callback(
      [&] { exit_code = run_compare_command("rq2", rq2_corpus, rq2_flags); });

  auto* rq3_cmd = app.add_subcommand(
      "rq3", "Fine-grained-specification synthesis experiment");
  CommonRunFlags rq3_flags;
  std::string rq3_corpus;
  add_run_flags(rq3_cmd, &rq3_flags);
  rq3_cmd->add_option("--corpus", rq3_corpus, "corpus directory")->required();
  rq3_cmd->callback(
      [&] { exit_code = run_compare_command("rq3", rq3_corpus, rq3_flags); });

  // validate-corpus
  auto* validate_cmd = app.add_subcommand(
      "validate-corpus",
      "Check every corpus entry's DSL spec against its ground truth");
  std::string validate_dir;
  validate_cmd->add_option("--corpus", validate_dir, "corpus directory")
      ->required();
  validate_cmd->callback([&] {
    const std::vector<policylab::CorpusEntry> corpus =
        policylab::load_corpus(validate_dir);
    if (corpus.empty()) {
      throw Error(ErrorCode::kConfigError,
                  "no corpus entries under " + validate_dir);
    }
    const policylab::CorpusValidation validation =
        policylab::validate_corpus(corpus);
    for (const policylab::CorpusValidationRow& row : validation.rows) {
      std::cout << row.id << ": "
                << (row.ok ? "ok" : policylab::relation_name(row.relation))
                << "\n";
    }
    std::cout << (validation.all_ok ? "all entries valid" : "INVALID corpus")
              << " (" << validation.rows.size() << " entries)\n";
    if (!validation.all_ok) exit_code = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad flags are configuration errors
  } catch (const Error& e) {
    std::cerr << "error [" << policylab::error_code_name(e.code())
              << "]: " << e.what() << "\n";
    return is_configuration_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
