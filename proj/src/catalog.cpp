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

#include "planar/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

#include "planar/kernels.hpp"

namespace planar {
namespace {

using u64 = std::uint64_t;

constexpr std::size_t kChunk = 2048;

// Rows n = 5..18, columns p in kReferencePrimes; 0 marks an empty cell.
constexpr u64 kReferencePrimes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29,
                                    31, 37, 41, 43, 47, 53, 59, 61};
constexpr u64 kReferenceGrid[][17] = {
    {4, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3},  // n = 5
    {3, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 0, 0, 0, 0, 0, 0},  // n = 6
    {6, 4, 4, 4, 4, 4, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},  // n = 7
    {4, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},  // n = 8
    {7, 5, 5, 5, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},  // n = 9
    {6, 3, 3, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},  // n = 10
    {10, 6, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},  // n = 11
    {5, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},  // n = 12
    {12, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},  // n = 13
    {9, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},  // n = 14
    {11, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},  // n = 15
    {8, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},  // n = 16
    {16, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},  // n = 17
    {10, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},  // n = 18
};

u64 reduce_exponent(u64 e, Code q) {
  // Into [1, q - 1]; only matters for tiny fields.
  return (e - 1) % (q - 1) + 1;
}

void insert_canonical(std::set<u64>& out, u64 k, u64 p, int n) {
  out.insert(canonical_exponent(k, p, n));
}

ExponentVerdict search_exponent(const DeltaKernel& kernel, u64 k, u64 N,
                                u64 seed) {
  const FieldCtx& ctx = kernel.field();
  RngState rng = RngState::for_exponent(seed, ctx.p(), ctx.n(), k);
  const CollisionResult cr = collision_search(kernel, k, N, rng);
  if (!cr.candidate) {
    return {k, Outcome::kCollisionNotPlanar, cr.draws, cr.witness};
  }
  const VerifyResult vr = exhaustive_verify(kernel, k);
  if (vr.planar) return {k, Outcome::kVerifiedPlanar, cr.draws, std::nullopt};
  return {k, Outcome::kVerifiedNotPlanar, cr.draws, vr.witness};
}

ExponentVerdict verify_exponent(const DeltaKernel& kernel, u64 k) {
  const VerifyResult vr = exhaustive_verify(kernel, k);
  if (vr.planar) return {k, Outcome::kVerifiedPlanar, 0, std::nullopt};
  return {k, Outcome::kVerifiedNotPlanar, 0, vr.witness};
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  if (workers <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(workers, count));
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
}

FieldClassification classify_prerequisite(u64 p, int d,
                                          const SearchConfig& config,
                                          const SubfieldLookup& lookup) {
  if (has_small_subfield_rule(p, d)) return analytic_classification(p, d);
  const Method method = d <= 4 ? Method::kExhaustive : Method::kSearch;
  SearchConfig sub = config;
  sub.output.clear();
  return classify_field(p, d, sub, method, lookup);
}

FieldClassification empty_record(u64 p, int n, const SearchConfig& config,
                                 Method method) {
  FieldClassification c;
  c.p = p;
  c.n = n;
  c.q = checked_field_order(p, n);
  c.method = method;
  c.master_seed = config.master_seed;
  c.n_multiplier = config.n_multiplier;
  c.zieve_filter = config.zieve_filter;
  c.timestamp = current_timestamp();
  return c;
}

void finish(FieldClassification& c, const std::set<u64>& planar,
            bool complete) {
  c.planar_canonical.assign(planar.begin(), planar.end());
  c.class_count = c.planar_canonical.size();
  c.complete = complete;
}

}  // namespace

std::vector<u64> known_planar_exponents(u64 p, int n) {
  const Code q = checked_field_order(p, n);
  if (q == 0 || p % 2 == 0) throw std::invalid_argument("unsupported field");
  std::set<u64> out;
  for (int i = 0; i < n; ++i) {
    const u64 g = std::gcd(i, n);
    if ((p * (n / g)) % 2 == 1) {
      insert_canonical(out, reduce_exponent(ipow(p, i) + 1, q), p, n);
    }
  }
  if (p == 3) {
    for (int i = 3; i < n; ++i) {
      if (std::gcd(i, 2 * n) == 1) {
        insert_canonical(out, reduce_exponent((ipow(3, i) + 1) / 2, q), p, n);
      }
    }
  }
  return {out.begin(), out.end()};
}

u64 expected_known_class_count(u64 p, int n) {
  return known_planar_exponents(p, n).size();
}

bool is_known_family(u64 k, u64 p, int n) {
  const auto known = known_planar_exponents(p, n);
  return std::binary_search(known.begin(), known.end(),
                            canonical_exponent(k, p, n));
}

std::string_view method_name(Method method) {
  switch (method) {
    case Method::kAnalytic: return "analytic";
    case Method::kExhaustive: return "exhaustive";
    case Method::kSearch: return "search";
    case Method::kOracle: return "oracle";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : {Method::kAnalytic, Method::kExhaustive, Method::kSearch,
                   Method::kOracle}) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

u64 max_exponent(Code q) { return q > 3 ? q - 2 : 2; }

FieldClassification analytic_classification(u64 p, int n) {
  if (!has_small_subfield_rule(p, n)) {
    throw std::invalid_argument("no closed-form classification for field");
  }
  const Code q = checked_field_order(p, n);
  std::vector<u64> residues;
  switch (n) {
    case 1:
      residues = {2};
      break;
    case 2:
      residues = {2, 2 * p};
      break;
    case 3:
      for (u64 pi = 1; pi <= p * p; pi *= p) {
        for (u64 pj = 1; pj <= p * p; pj *= p) residues.push_back(pi + pj);
      }
      break;
    default:
      for (u64 pj = 1; pj <= p * p * p; pj *= p) residues.push_back(2 * pj);
      break;
  }
  std::set<u64> planar;
  for (u64 r : residues) {
    insert_canonical(planar, reduce_exponent(r, q), p, n);
  }
  SearchConfig config;
  FieldClassification c = empty_record(p, n, config, Method::kAnalytic);
  finish(c, planar, true);
  return c;
}

std::vector<u64> oracle_planar_exponents(const FieldCtx& ctx,
                                         Code oracle_bound) {
  std::vector<u64> out;
  for (u64 k = 2; k <= max_exponent(ctx.q()); ++k) {
    if (oracle_full_planarity(ctx, k, oracle_bound)) out.push_back(k);
  }
  return out;
}

FieldClassification classify_field(u64 p, int n, const SearchConfig& config,
                                   Method method, const SubfieldLookup& lookup,
                                   const ClassifyHooks& hooks) {
  config.validate();
  const FieldCtx ctx = make_field(p, n);
  FieldClassification c = empty_record(p, n, config, method);
  std::set<u64> planar;

  if (method == Method::kAnalytic) return analytic_classification(p, n);

  if (method == Method::kOracle) {
    for (u64 k : oracle_planar_exponents(ctx, config.oracle_bound)) {
      insert_canonical(planar, k, p, n);
    }
    c.stats.exponents = max_exponent(ctx.q()) - 1;
    c.stats.verified_planar = planar.size();
    finish(c, planar, true);
    return c;
  }

  SubfieldRuleSet rules;
  if (method == Method::kSearch) {
    SubfieldLookup resolved = [&](u64 sp, int d)
        -> std::optional<std::vector<u64>> {
      if (lookup) {
        if (auto hit = lookup(sp, d)) return hit;
      }
      return classify_prerequisite(sp, d, config, lookup).planar_canonical;
    };
    rules = SubfieldRuleSet::build(p, n, resolved);
  }
  const std::vector<u64> known = known_planar_exponents(p, n);
  const DeltaKernel kernel(ctx);
  const u64 N = default_N(ctx.q(), config.n_multiplier);

  std::vector<u64> batch;
  std::vector<ExponentVerdict> verdicts;
  u64 processed = 0;
  bool stopped = false;

  auto flush = [&] {
    verdicts.assign(batch.size(), ExponentVerdict{});
    parallel_for(batch.size(), config.workers, [&](std::size_t i) {
      const u64 k = batch[i];
      if (hooks.resume != nullptr) {
        if (auto it = hooks.resume->find(k); it != hooks.resume->end()) {
          verdicts[i] = it->second;
          return;
        }
      }
      verdicts[i] = method == Method::kSearch
                        ? search_exponent(kernel, k, N, config.master_seed)
                        : verify_exponent(kernel, k);
    });
    for (const auto& v : verdicts) {
      switch (v.outcome) {
        case Outcome::kCollisionNotPlanar:
          ++c.stats.collisions;
          break;
        case Outcome::kVerifiedNotPlanar:
          if (method == Method::kSearch) ++c.stats.candidates;
          ++c.stats.verified_not_planar;
          break;
        case Outcome::kVerifiedPlanar:
          if (method == Method::kSearch) ++c.stats.candidates;
          ++c.stats.verified_planar;
          planar.insert(v.k);
          break;
        default:
          throw std::logic_error("unexpected outcome from search");
      }
    }
    c.stats.searched += verdicts.size();
    processed += verdicts.size();
    if (hooks.on_verdicts) hooks.on_verdicts(verdicts);
    batch.clear();
  };

  const u64 kmax = max_exponent(ctx.q());
  for (u64 k = 2; k <= kmax; ++k) {
    ++c.stats.exponents;
    if (!is_canonical(k, p, n)) {
      ++c.stats.non_canonical;
      continue;
    }
    if (!gcd_filter(k, ctx.q())) {
      ++c.stats.filtered_gcd;
      continue;
    }
    if (method == Method::kSearch) {
      if (!subfield_filter(k, p, n, rules)) {
        ++c.stats.filtered_subfield;
        continue;
      }
      if (config.zieve_filter &&
          zieve_bound_filter(k, p, n, known) ==
              BoundVerdict::kProvablyNotPlanar) {
        ++c.stats.filtered_bound;
        continue;
      }
    }
    batch.push_back(k);
    if (hooks.stop_after && processed + batch.size() >= *hooks.stop_after) {
      flush();
      stopped = true;
      break;
    }
    if (batch.size() == kChunk) flush();
  }
  if (!stopped) flush();
  finish(c, planar, !stopped);
  return c;
}

std::vector<u64> unexpected_planar(const FieldClassification& c) {
  const auto known = known_planar_exponents(c.p, c.n);
  std::vector<u64> out;
  std::set_difference(c.planar_canonical.begin(), c.planar_canonical.end(),
                      known.begin(), known.end(), std::back_inserter(out));
  return out;
}

const std::map<std::pair<int, u64>, u64>& reference_class_counts() {
  static const auto* grid = [] {
    auto* m = new std::map<std::pair<int, u64>, u64>();
    for (int row = 0; row < 14; ++row) {
      for (int col = 0; col < 17; ++col) {
        if (kReferenceGrid[row][col] != 0) {
          (*m)[{row + 5, kReferencePrimes[col]}] = kReferenceGrid[row][col];
        }
      }
    }
    return m;
  }();
  return *grid;
}

std::optional<u64> reference_class_count(int n, u64 p) {
  const auto& grid = reference_class_counts();
  if (auto it = grid.find({n, p}); it != grid.end()) return it->second;
  return std::nullopt;
}

Comparison compare_against_reference(const FieldClassification& c) {
  Comparison out;
  out.got = c.class_count;
  if (auto expected = reference_class_count(c.n, c.p)) {
    out.expected = *expected;
    out.kind = *expected == c.class_count ? Comparison::Kind::kMatch
                                          : Comparison::Kind::kMismatch;
  }
  return out;
}

std::string current_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

}  // namespace planar
