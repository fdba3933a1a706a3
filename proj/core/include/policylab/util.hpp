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

#ifndef POLICYLAB_UTIL_HPP_
#define POLICYLAB_UTIL_HPP_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace policylab {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// ASCII-only lowercase fold; bytes outside A-Z pass through untouched.
std::string ascii_lower(std::string_view s);

/// FNV-1a 64-bit of the raw bytes, as 16 lowercase hex digits. Used to key
/// replay fixtures by prompt text.
std::string fnv1a64_hex(std::string_view bytes);

std::string base64_encode(std::string_view bytes);
std::string base64_decode(std::string_view text);  // throws kMalformedJson on bad input

/// Exact decimal rendering of a rational, truncated to at most `max_places`
/// fractional digits with trailing zeros removed ("9/10" -> "0.9").
std::string format_rational(const BigRational& value, int max_places = 6);

std::string read_file(const std::filesystem::path& path);   // throws kIoFailure
void write_file(const std::filesystem::path& path, std::string_view bytes);

std::string iso8601_utc_now();

/// Deterministic RNG used everywhere reproducibility matters: mt19937_64
/// seeded directly, bounded draws by modulo reduction. Both choices are part
/// of the reproducibility contract, so generated artifacts are stable across
/// platforms and standard-library implementations.
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform-ish draw in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

  /// Draw in [lo, hi], inclusive.
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    return lo + below(hi - lo + 1);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace policylab

#endif  // POLICYLAB_UTIL_HPP_
