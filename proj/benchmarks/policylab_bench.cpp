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
// Microbenchmarks for the paths experiments spend their time in: glob
// compilation, automaton algebra, request evaluation, policy comparison,
// and bounded counting. Run with --benchmark_filter=... to narrow.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <string>
#include <vector>

#include "policylab/alphabet.hpp"
#include "policylab/analyzer.hpp"
#include "policylab/dfa.hpp"
#include "policylab/fgdsl.hpp"
#include "policylab/policy.hpp"
#include "policylab/request_set.hpp"
#include "policylab/specgen.hpp"
#include "policylab/synth.hpp"

namespace {

using namespace policylab;

// A realistic pair: a bucket policy and a cosmetic restatement with an
// extra carve-out, the shape corpus comparisons take.
Policy bucket_policy() {
  return compile_fgspec(parse_fgspec(
      "ALLOW user:alice READ bucket:projectdata/\n"
      "ALLOW user:alice WRITE bucket:projectdata/reports/*\n"
      "ALLOW role:ingest WRITE bucket:applogs/\n"
      "DENY any DELETE bucket:projectdata/\n"));
}

Policy carved_policy() {
  return compile_fgspec(parse_fgspec(
      "ALLOW user:alice READ bucket:projectdata/\n"
      "ALLOW user:alice WRITE bucket:projectdata/reports/*\n"
      "ALLOW role:ingest WRITE bucket:applogs/\n"
      "DENY any DELETE bucket:projectdata/\n"
      "DENY user:alice READ bucket:projectdata/tmp/*\n"));
}

void BM_CompileGlob(benchmark::State& state) {
  const Alphabet a = Alphabet::standard();
  const std::string pattern = "arn:aws:s3:::projectdata/reports/*/summary-?";
  for (auto _ : state) {
    benchmark::DoNotOptimize(compile_glob(pattern, a));
  }
}
BENCHMARK(BM_CompileGlob);

void BM_DfaIntersectComplement(benchmark::State& state) {
  const Alphabet a = Alphabet::standard();
  const Dfa everything = compile_glob("projectdata/*", a);
  const Dfa reports = compile_glob("projectdata/reports/*", a);
  for (auto _ : state) {
    benchmark::DoNotOptimize(intersect(everything, complement(reports)));
  }
}
BENCHMARK(BM_DfaIntersectComplement);

void BM_Evaluate(benchmark::State& state) {
  const Policy policy = carved_policy();
  const RequestSpec spec = generate_request_spec(7);
  std::size_t i = 0;
  for (auto _ : state) {
    const Request& request = spec.allowed[i++ % spec.allowed.size()];
    benchmark::DoNotOptimize(evaluate(policy, request));
  }
}
BENCHMARK(BM_Evaluate);

void BM_Denote(benchmark::State& state) {
  const Policy policy = carved_policy();
  const Alphabet a = covering_alphabet(Alphabet::standard(), {&policy});
  for (auto _ : state) {
    benchmark::DoNotOptimize(denote(policy, a));
  }
}
BENCHMARK(BM_Denote);

void BM_Compare(benchmark::State& state) {
  const Policy p1 = bucket_policy();
  const Policy p2 = carved_policy();
  const Alphabet a = covering_alphabet(Alphabet::standard(), {&p1, &p2});
  const int bound = default_compare_bound(p1, p2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compare(p1, p2, a, bound));
  }
}
BENCHMARK(BM_Compare);

void BM_CountUpto(benchmark::State& state) {
  const Policy policy = carved_policy();
  const Alphabet a = covering_alphabet(Alphabet::standard(), {&policy});
  const RequestSet denoted = denote(policy, a);
  const int bound = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(denoted.count_upto(bound));
  }
}
BENCHMARK(BM_CountUpto)->Arg(40)->Arg(80);

void BM_PerfectPolicySynthesis(benchmark::State& state) {
  const RequestSpec spec = generate_request_spec(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(perfect_policy(spec));
  }
}
BENCHMARK(BM_PerfectPolicySynthesis);

void BM_ClassifyRequests(benchmark::State& state) {
  const RequestSpec spec = generate_request_spec(7);
  const Policy policy = perfect_policy(spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify_requests(policy, spec.allowed,
                                               spec.denied));
  }
}
BENCHMARK(BM_ClassifyRequests);

}  // namespace

BENCHMARK_MAIN();
