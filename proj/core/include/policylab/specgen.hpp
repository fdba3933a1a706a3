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
// Synthetic request specifications and the bundled ground-truth corpus.
//
// generate_request_spec() produces randomized but fully reproducible
// concrete-request specifications: synthetic S3 access patterns built by
// combining predefined principals, actions, buckets, directories, and file
// names into resource paths of varying depth. The same seed and parameters
// always produce the same specification, byte for byte.
//
// The corpus couples each hand-written ground-truth policy with a coarse
// natural-language description and a fine-grained DSL specification of the
// same access rules. A validation gate keeps those three views honest: an
// entry is admissible only when its DSL spec compiles to a policy that is
// comparison-Equivalent to the ground truth.

#ifndef POLICYLAB_SPECGEN_HPP_
#define POLICYLAB_SPECGEN_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "policylab/analyzer.hpp"
#include "policylab/fgdsl.hpp"
#include "policylab/policy.hpp"

namespace policylab {

// Knobs for generate_request_spec(). Counts and depth are drawn uniformly
// from the inclusive ranges; the pools are drawn from uniformly with
// replacement. All ranges must satisfy 1 <= min <= max and all pools must
// be non-empty (Error{kParamOutOfRange}).
struct SpecGenParams {
  int min_allowed = 30;
  int max_allowed = 150;
  int min_denied = 5;
  int max_denied = 20;
  int min_depth = 1;  // directory segments per resource path
  int max_depth = 4;

  std::vector<std::string> principals = {"alice", "bob",  "carol",
                                         "dave",  "erin", "frank"};
  std::vector<std::string> actions = {
      "s3:GetObject",    "s3:PutObject",    "s3:DeleteObject",
      "s3:ListBucket",   "s3:GetObjectAcl", "s3:PutObjectAcl",
      "s3:GetObjectVersion"};
  std::vector<std::string> buckets = {"mybucket", "projectdata", "applogs",
                                      "backups"};
  std::vector<std::string> directories = {"backups", "data",    "logs",
                                          "reports", "images",  "archive",
                                          "tmp",     "users"};
  std::vector<std::string> files = {
      "file1.txt", "file2.txt", "file3.txt", "file4.txt", "file5.txt",
      "file6.txt", "file7.txt", "file8.txt", "file9.txt", "data.csv",
      "report.pdf", "image.png", "notes.txt"};

  friend bool operator==(const SpecGenParams&, const SpecGenParams&) = default;
};

// A concrete specification: requests that must be allowed and requests that
// must be denied. The two lists are disjoint and duplicate-free.
struct RequestSpec {
  std::vector<Request> allowed;
  std::vector<Request> denied;
  std::uint64_t seed = 0;
  SpecGenParams params;

  friend bool operator==(const RequestSpec&, const RequestSpec&) = default;
};

// Deterministic generation (see file comment). Resources have the shape
// <bucket>/<dir>{/<dir>}/<file> with the number of directory segments drawn
// from the depth range. Collisions — within a list or across the two lists
// — are resampled away.
RequestSpec generate_request_spec(std::uint64_t seed,
                                  const SpecGenParams& params = {});

// JSON file form: {"seed", "params", "allowed", "denied"} with one
// {"principal", "action", "resource"} object per request. Rendering is
// canonical; parse(render(s)) == s up to the configurable pools, which are
// code-level configuration and not serialized.
std::string render_request_spec_json(const RequestSpec& spec);
RequestSpec parse_request_spec_json(const std::string& json_text);

// One bundled ground-truth entry (directory layout in load_corpus()).
struct CorpusEntry {
  std::string id;                  // directory name
  Policy ground_truth;
  std::string coarse_description;  // natural-language view, trailing
                                   // whitespace trimmed
  FgSpec fg_spec;                  // fine-grained DSL view
  std::vector<std::string> tags;   // e.g. s3, ec2, iam
};

// Loads one entry from a directory holding {policy.json, coarse.txt,
// spec.fgs, meta.json}; the directory name is the entry id. meta.json
// carries the tags. Missing files raise Error{kMissingFile}; malformed
// content propagates the underlying parse error.
CorpusEntry load_corpus_entry(const std::filesystem::path& dir);

// Loads every `corpus_dir/<id>/` subdirectory as an entry, sorted by id.
// An empty or absent directory yields an empty corpus.
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& corpus_dir);

struct CorpusValidationRow {
  std::string id;
  Relation relation = Relation::kEquivalent;
  bool ok = false;  // relation == Equivalent
};

struct CorpusValidation {
  std::vector<CorpusValidationRow> rows;
  bool all_ok = true;
};

// The admission gate: compiles each entry's DSL spec and compares it with
// the entry's ground truth. Entries whose compiled policy is not Equivalent
// fail the gate.
CorpusValidation validate_corpus(const std::vector<CorpusEntry>& entries);

}  // namespace policylab

#endif  // POLICYLAB_SPECGEN_HPP_
