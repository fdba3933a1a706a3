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
// The three experiments, end to end.
//
// RQ1 — concrete requests: generate a request specification per seed, ask
// the backend for a policy, and measure how many of the specification's
// requests the synthesized policy classifies correctly.
//
// RQ2 — coarse descriptions, and RQ3 — fine-grained DSL specs: for each
// corpus entry, ask the backend for a policy from the respective prompt and
// compare the result against the ground-truth policy, tallying the
// distribution over the four permissiveness relations.
//
// Rows never abort the batch: per-row failures (unreachable backend,
// unusable response) are recorded in the row and the run continues.
// Reports are deterministic — under the replay or oracle backends the
// emitted files are byte-stable, which is what the golden-report tests pin
// down. Timestamps and latencies live in transcripts, never in reports.

#ifndef POLICYLAB_HARNESS_HPP_
#define POLICYLAB_HARNESS_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "policylab/analyzer.hpp"
#include "policylab/specgen.hpp"
#include "policylab/synth.hpp"

namespace policylab {

struct HarnessOptions {
  SpecGenParams params;          // RQ1 specification generation knobs
  int jobs = 1;                  // parallel rows; 1 = sequential
  TranscriptSink* sink = nullptr;  // optional synthesis transcript
};

struct Rq1Row {
  std::string spec_id;  // "seed-<seed>"
  std::uint64_t seed = 0;
  int total_requests = 0;
  int misclassified = 0;
  std::optional<BigRational> rate;  // engaged iff a policy was extracted
  bool extracted = false;           // syntactic validity of the response
  std::string extraction_status;
  std::string error;  // row-level failure, e.g. backend unreachable
};

struct Rq1Result {
  std::string backend_id;
  std::vector<Rq1Row> rows;  // in seed order
  int extraction_failures = 0;
  // Arithmetic mean of per-spec rates over rows with an extracted policy
  // (how the headline number is usually quoted), plus the request-weighted
  // mean (total correct / total requests), since the two differ whenever
  // spec sizes vary. Disengaged when nothing was extracted.
  std::optional<BigRational> mean_rate;
  std::optional<BigRational> weighted_mean_rate;
};

struct RqCompareRow {
  std::string corpus_id;
  bool extracted = false;
  std::string extraction_status;
  std::optional<Relation> relation;
  CountResult only_in_synth;  // requests the synthesized policy over-allows
  CountResult only_in_truth;  // requests it fails to allow
  std::string alphabet_id;
  std::string error;
};

struct RqCompareResult {
  std::string experiment;  // "rq2" or "rq3"
  std::string backend_id;
  std::vector<RqCompareRow> rows;          // in corpus order
  std::map<Relation, int> distribution;    // over rows with a verdict
  int extraction_failures = 0;
};

// Runs the concrete-request experiment over the given seeds. Specifications
// are generated and registered into `catalog` up front (so source-resolving
// backends can look them up), then rows run, possibly in parallel.
Rq1Result run_rq1(const std::vector<std::uint64_t>& seeds,
                  SourceCatalog& catalog, SynthesisBackend& backend,
                  const HarnessOptions& options = {});

// Runs the description-based experiments over a corpus. The corpus is
// validated first — Error{kValidationFailure} names the first entry whose
// DSL spec does not match its ground truth, since comparing against an
// unvalidated "truth" would make every verdict meaningless.
RqCompareResult run_rq2(const std::vector<CorpusEntry>& corpus,
                        SourceCatalog& catalog, SynthesisBackend& backend,
                        const HarnessOptions& options = {});
RqCompareResult run_rq3(const std::vector<CorpusEntry>& corpus,
                        SourceCatalog& catalog, SynthesisBackend& backend,
                        const HarnessOptions& options = {});

// Writes `report.json` (authoritative) and `rows.csv` (per-row flat form)
// into the directory, creating it if needed. Output is deterministic:
// equal results produce byte-equal files. Throws Error{kIoFailure} on
// write failure.
void emit_report(const Rq1Result& result,
                 const std::filesystem::path& report_dir);
void emit_report(const RqCompareResult& result,
                 const std::filesystem::path& report_dir);

}  // namespace policylab

#endif  // POLICYLAB_HARNESS_HPP_
