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

#include "policylab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>

#include "json_support.hpp"
#include "policylab/errors.hpp"
#include "policylab/util.hpp"

namespace policylab {
namespace {

using detail::Json;

// Runs fn(i) for i in [0, n), across options.jobs threads. Results must be
// written into pre-sized slots so assembly stays deterministic regardless
// of scheduling.
void for_each_row(int n, int jobs, const std::function<void(int)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> threads;
  const int thread_count = std::min(jobs, n);
  threads.reserve(thread_count);
  for (int t = 0; t < thread_count; ++t) threads.emplace_back(worker);
  for (std::thread& thread : threads) thread.join();
}

SynthesisRecord synthesize_row(const Prompt& prompt,
                               SynthesisBackend& backend,
                               TranscriptSink* sink) {
  SynthesisRecord record = synthesize(prompt, backend);
  if (sink != nullptr) sink->append(record);
  return record;
}

void validate_or_throw(const std::vector<CorpusEntry>& corpus) {
  const CorpusValidation validation = validate_corpus(corpus);
  for (const CorpusValidationRow& row : validation.rows) {
    if (!row.ok) {
      throw Error(ErrorCode::kValidationFailure,
                  "corpus entry \"" + row.id +
                      "\" failed validation: compiled spec is " +
                      relation_name(row.relation) +
                      " relative to its ground truth");
    }
  }
}

RqCompareResult run_compare_experiment(const std::string& experiment,
                                       PromptKind kind,
                                       const std::vector<CorpusEntry>& corpus,
                                       SourceCatalog& catalog,
                                       SynthesisBackend& backend,
                                       const HarnessOptions& options) {
  validate_or_throw(corpus);
  for (const CorpusEntry& entry : corpus) catalog.add_entry(entry);

  RqCompareResult result;
  result.experiment = experiment;
  result.backend_id = backend.id();
  result.rows.resize(corpus.size());

  for_each_row(static_cast<int>(corpus.size()), options.jobs, [&](int i) {
    const CorpusEntry& entry = corpus[i];
    RqCompareRow& row = result.rows[i];
    row.corpus_id = entry.id;
    try {
      const Prompt prompt = build_prompt(kind, entry);
      const SynthesisRecord record =
          synthesize_row(prompt, backend, options.sink);
      row.extraction_status =
          extraction_status_name(record.extraction.status);
      row.extracted = record.extraction.status == ExtractionStatus::kOk;
      if (!row.extracted) return;

      const Policy& synthesized = *record.extraction.policy;
      const Alphabet alphabet = covering_alphabet(
          Alphabet::standard(), {&synthesized, &entry.ground_truth});
      const ComparisonVerdict verdict =
          compare(synthesized, entry.ground_truth, alphabet,
                  default_compare_bound(synthesized, entry.ground_truth));
      row.relation = verdict.relation;
      row.only_in_synth = verdict.only_in_first;
      row.only_in_truth = verdict.only_in_second;
      row.alphabet_id = verdict.alphabet_id;
    } catch (const std::exception& error) {
      row.error = error.what();
    }
  });

  for (const RqCompareRow& row : result.rows) {
    if (row.relation) {
      ++result.distribution[*row.relation];
    } else if (row.error.empty()) {
      ++result.extraction_failures;
    }
  }
  return result;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += '"';
  return out;
}

Json optional_rate_json(const std::optional<BigRational>& rate) {
  return rate ? detail::rate_json(*rate) : Json(nullptr);
}

}  // namespace

Rq1Result run_rq1(const std::vector<std::uint64_t>& seeds,
                  SourceCatalog& catalog, SynthesisBackend& backend,
                  const HarnessOptions& options) {
  // Generation is cheap and deterministic; do it up front and serially so
  // every source is registered before any backend call runs.
  std::vector<RequestSpec> specs;
  specs.reserve(seeds.size());
  for (std::uint64_t seed : seeds) {
    RequestSpec spec = generate_request_spec(seed, options.params);
    catalog.add_spec("seed-" + std::to_string(seed), spec);
    specs.push_back(std::move(spec));
  }

  Rq1Result result;
  result.backend_id = backend.id();
  result.rows.resize(seeds.size());

  for_each_row(static_cast<int>(seeds.size()), options.jobs, [&](int i) {
    const RequestSpec& spec = specs[i];
    Rq1Row& row = result.rows[i];
    row.seed = seeds[i];
    row.spec_id = "seed-" + std::to_string(seeds[i]);
    row.total_requests =
        static_cast<int>(spec.allowed.size() + spec.denied.size());
    try {
      const Prompt prompt =
          build_prompt(PromptKind::kConcreteRequest, spec, row.spec_id);
      const SynthesisRecord record =
          synthesize_row(prompt, backend, options.sink);
      row.extraction_status =
          extraction_status_name(record.extraction.status);
      row.extracted = record.extraction.status == ExtractionStatus::kOk;
      if (!row.extracted) return;

      const ClassificationResult classification = classify_requests(
          *record.extraction.policy, spec.allowed, spec.denied);
      row.misclassified = static_cast<int>(classification.rows.size()) -
                          classification.correct_count;
      row.rate = classification.rate;
    } catch (const std::exception& error) {
      row.error = error.what();
    }
  });

  BigRational rate_sum = 0;
  BigInt correct_sum = 0;
  BigInt total_sum = 0;
  int rated_rows = 0;
  for (const Rq1Row& row : result.rows) {
    if (row.rate) {
      rate_sum += *row.rate;
      correct_sum += row.total_requests - row.misclassified;
      total_sum += row.total_requests;
      ++rated_rows;
    } else if (row.error.empty()) {
      ++result.extraction_failures;
    }
  }
  if (rated_rows > 0) {
    result.mean_rate = rate_sum / rated_rows;
    result.weighted_mean_rate = BigRational(correct_sum, total_sum);
  }
  return result;
}

RqCompareResult run_rq2(const std::vector<CorpusEntry>& corpus,
                        SourceCatalog& catalog, SynthesisBackend& backend,
                        const HarnessOptions& options) {
  return run_compare_experiment("rq2", PromptKind::kCoarseGrained, corpus,
                                catalog, backend, options);
}

RqCompareResult run_rq3(const std::vector<CorpusEntry>& corpus,
                        SourceCatalog& catalog, SynthesisBackend& backend,
                        const HarnessOptions& options) {
  return run_compare_experiment("rq3", PromptKind::kFineGrainedSyntax, corpus,
                                catalog, backend, options);
}

void emit_report(const Rq1Result& result,
                 const std::filesystem::path& report_dir) {
  Json report = Json::object();
  report["experiment"] = "rq1";
  report["backend"] = result.backend_id;

  Json rows = Json::array();
  std::string csv =
      "spec,seed,total_requests,misclassified,rate,extracted,extraction,"
      "error\n";
  for (const Rq1Row& row : result.rows) {
    Json entry = Json::object();
    entry["spec"] = row.spec_id;
    entry["seed"] = row.seed;
    entry["total_requests"] = row.total_requests;
    entry["misclassified"] = row.misclassified;
    entry["rate"] = optional_rate_json(row.rate);
    entry["extracted"] = row.extracted;
    entry["extraction"] = row.extraction_status;
    entry["error"] = row.error;
    rows.push_back(std::move(entry));

    csv += csv_escape(row.spec_id) + ',' + std::to_string(row.seed) + ',' +
           std::to_string(row.total_requests) + ',' +
           std::to_string(row.misclassified) + ',' +
           (row.rate ? format_rational(*row.rate) : "") + ',' +
           (row.extracted ? "true" : "false") + ',' +
           csv_escape(row.extraction_status) + ',' + csv_escape(row.error) +
           '\n';
  }
  report["rows"] = std::move(rows);
  report["specs_total"] = result.rows.size();
  report["extraction_failures"] = result.extraction_failures;
  report["mean_rate_over_extracted"] = optional_rate_json(result.mean_rate);
  report["request_weighted_mean_rate"] =
      optional_rate_json(result.weighted_mean_rate);

  write_file(report_dir / "report.json", report.dump(2) + "\n");
  write_file(report_dir / "rows.csv", csv);
}

void emit_report(const RqCompareResult& result,
                 const std::filesystem::path& report_dir) {
  Json report = Json::object();
  report["experiment"] = result.experiment;
  report["backend"] = result.backend_id;

  Json rows = Json::array();
  std::string csv =
      "id,extracted,extraction,relation,only_in_synth,only_in_truth,"
      "length_bound,alphabet,error\n";
  for (const RqCompareRow& row : result.rows) {
    Json entry = Json::object();
    entry["id"] = row.corpus_id;
    entry["extracted"] = row.extracted;
    entry["extraction"] = row.extraction_status;
    entry["relation"] =
        row.relation ? Json(relation_name(*row.relation)) : Json(nullptr);
    entry["only_in_synth"] =
        row.relation ? detail::count_json(row.only_in_synth) : Json(nullptr);
    entry["only_in_truth"] =
        row.relation ? detail::count_json(row.only_in_truth) : Json(nullptr);
    entry["alphabet"] = row.alphabet_id;
    entry["error"] = row.error;
    rows.push_back(std::move(entry));

    csv += csv_escape(row.corpus_id) + ',' +
           (row.extracted ? "true" : "false") + ',' +
           csv_escape(row.extraction_status) + ',' +
           (row.relation ? relation_name(*row.relation) : "") + ',' +
           (row.relation ? row.only_in_synth.count.str() : "") + ',' +
           (row.relation ? row.only_in_truth.count.str() : "") + ',' +
           (row.relation ? std::to_string(std::max(
                               row.only_in_synth.length_bound,
                               row.only_in_truth.length_bound))
                         : "") +
           ',' + csv_escape(row.alphabet_id) + ',' + csv_escape(row.error) +
           '\n';
  }
  report["rows"] = std::move(rows);
  report["entries_total"] = result.rows.size();
  report["extraction_failures"] = result.extraction_failures;

  Json distribution = Json::object();
  for (Relation relation :
       {Relation::kEquivalent, Relation::kFirstStrictlyMore,
        Relation::kSecondStrictlyMore, Relation::kIncomparable}) {
    const auto it = result.distribution.find(relation);
    distribution[relation_name(relation)] =
        it == result.distribution.end() ? 0 : it->second;
  }
  report["distribution"] = std::move(distribution);

  write_file(report_dir / "report.json", report.dump(2) + "\n");
  write_file(report_dir / "rows.csv", csv);
}

}  // namespace policylab
