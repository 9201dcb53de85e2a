// Copyright 2026 The planar-monomials Authors
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

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "planar/config.hpp"
#include "planar/detect.hpp"
#include "planar/sieve.hpp"

namespace planar {

// Canonical exponents of the known planar monomials over F_{p^n}:
//   X^(p^i + 1), 0 <= i < n, when p n / gcd(i, n) is odd;
//   X^((3^i + 1) / 2), p = 3, 2 < i < n, gcd(i, 2n) = 1 (Coulter-Matthews).
std::vector<std::uint64_t> known_planar_exponents(std::uint64_t p, int n);
std::uint64_t expected_known_class_count(std::uint64_t p, int n);
bool is_known_family(std::uint64_t k, std::uint64_t p, int n);

// How a classification was produced.
//   analytic    closed-form subfield rules (n <= 4), nothing evaluated
//   exhaustive  exhaustive_verify on every canonical k with gcd(k, q-1) = 2
//   search      filters, collision search, exhaustive_verify of candidates
//   oracle      oracle_full_planarity on every k
enum class Method { kAnalytic, kExhaustive, kSearch, kOracle };

std::string_view method_name(Method method);
std::optional<Method> parse_method(std::string_view name);

struct FilterStats {
  std::uint64_t exponents = 0;
  std::uint64_t non_canonical = 0;
  std::uint64_t filtered_gcd = 0;
  std::uint64_t filtered_subfield = 0;
  std::uint64_t filtered_bound = 0;
  std::uint64_t searched = 0;
  std::uint64_t collisions = 0;
  std::uint64_t candidates = 0;
  std::uint64_t verified_not_planar = 0;
  std::uint64_t verified_planar = 0;

  friend bool operator==(const FilterStats&, const FilterStats&) = default;
};

struct FieldClassification {
  std::uint64_t p = 0;
  int n = 0;
  Code q = 0;
  std::vector<std::uint64_t> planar_canonical;  // sorted
  std::uint64_t class_count = 0;
  bool complete = false;
  Method method = Method::kSearch;
  std::uint64_t master_seed = 0;
  double n_multiplier = kDefaultNMultiplier;
  bool zieve_filter = false;
  std::string timestamp;   // excluded from determinism comparisons
  std::string log_digest;  // FNV-1a of the verdict log, empty if none
  FilterStats stats;

  friend bool operator==(const FieldClassification&,
                         const FieldClassification&) = default;
};

// Largest exponent examined: q - 2, except F_3 where X^2 (= X^(q-1)) is kept.
std::uint64_t max_exponent(Code q);

struct ClassifyHooks {
  // Verdicts of every exponent that reached search or verification, in
  // ascending k, one call per processed chunk.
  std::function<void(std::span<const ExponentVerdict>)> on_verdicts;
  // Verdicts from an interrupted earlier run; reused instead of recomputed.
  const std::map<std::uint64_t, ExponentVerdict>* resume = nullptr;
  // Stop with complete = false once this many exponents were processed.
  std::optional<std::uint64_t> stop_after;
};

// Closed-form record for n <= 4 (n = 4 needs p >= 5).
FieldClassification analytic_classification(std::uint64_t p, int n);

// Classifies F_{p^n}. Proper-divisor subfields without a closed-form rule
// are taken from `lookup`, or classified in memory first when missing.
FieldClassification classify_field(std::uint64_t p, int n,
                                   const SearchConfig& config, Method method,
                                   const SubfieldLookup& lookup = {},
                                   const ClassifyHooks& hooks = {});

// Every k in [2, max_exponent(q)] with X^k planar by the definitional check.
std::vector<std::uint64_t> oracle_planar_exponents(const FieldCtx& ctx,
                                                   Code oracle_bound);

// Planar canonical exponents that no known family explains.
std::vector<std::uint64_t> unexpected_planar(const FieldClassification& c);

// Published class counts for n >= 5, keyed by (n, p).
std::optional<std::uint64_t> reference_class_count(int n, std::uint64_t p);
const std::map<std::pair<int, std::uint64_t>, std::uint64_t>&
reference_class_counts();

struct Comparison {
  enum class Kind { kMatch, kMismatch, kNotComparable };
  Kind kind = Kind::kNotComparable;
  std::uint64_t expected = 0;
  std::uint64_t got = 0;
};

Comparison compare_against_reference(const FieldClassification& c);

std::string current_timestamp();

}  // namespace planar
