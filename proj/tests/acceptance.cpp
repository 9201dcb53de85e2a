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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.
//
//   acceptance [--only 1,2,...] [--workers W] [--state DIR]
//
// --state keeps the classification cache and verdict logs between
// invocations, so criteria can run as separate processes.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "planar/catalog.hpp"
#include "planar/runner.hpp"

namespace {

using namespace planar;
namespace fs = std::filesystem;
using u64 = std::uint64_t;
using Clock = std::chrono::steady_clock;

struct Field {
  int n;
  u64 p;
  u64 expected;
};

const std::vector<Field> kTierA = {
    {5, 3, 4}, {6, 3, 3}, {7, 3, 6}, {5, 5, 3}, {5, 7, 3}};
const std::vector<Field> kTierB = {
    {8, 3, 4}, {9, 3, 7}, {10, 3, 6}, {6, 5, 2}, {7, 5, 4},
    {6, 7, 2}, {5, 11, 3}, {5, 13, 3}, {5, 17, 3}, {5, 19, 3}};
const std::vector<Field> kTierC = {
    {11, 3, 10}, {12, 3, 5}, {8, 5, 1}, {7, 7, 4}, {6, 11, 2},
    {6, 13, 2}, {5, 23, 3}, {5, 29, 3}, {5, 31, 3}};

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream ss;
  ss.precision(s < 10 ? 2 : 0);
  ss << std::fixed << s << "s";
  return ss.str();
}

class Suite {
 public:
  Suite(unsigned workers, fs::path state) : cache_(state) {
    config_.workers = workers;
    config_.cache_dir = std::move(state);
  }

  // Tier fields go through the runner: records and verdict logs land in the
  // state cache, so later criteria (and later processes) can reuse them.
  FieldClassification classify(u64 p, int n) {
    cache_.load();
    if (auto hit = cache_.find(p, n)) return *hit;
    std::ostringstream sink;
    return run_classification(p, n, config_, {}, sink).record;
  }

  // In-memory classification with every verdict audited.
  FieldClassification run(u64 p, int n, Method method,
                          const SearchConfig* override = nullptr) {
    ClassifyHooks hooks;
    hooks.on_verdicts = [&](std::span<const ExponentVerdict> verdicts) {
      audit(make_field(p, n), verdicts);
    };
    const SubfieldLookup lookup = [this](u64 sp, int d)
        -> std::optional<std::vector<u64>> {
      if (auto it = done_.find({sp, d}); it != done_.end()) return it->second;
      return std::nullopt;
    };
    auto c = classify_field(p, n, override ? *override : config_, method,
                            lookup, hooks);
    if (c.complete) done_[{p, n}] = c.planar_canonical;
    return c;
  }

  void audit(const FieldCtx& ctx, std::span<const ExponentVerdict> verdicts) {
    for (const auto& v : verdicts) {
      if (!v.witness) continue;
      ++witnesses_;
      if (witness_valid(ctx, v.k, *v.witness)) ++valid_witnesses_;
    }
  }

  // Revalidates every witness in every verdict log of the state cache.
  std::size_t audit_logs() {
    const fs::path dir = config_.cache_dir / "logs";
    std::size_t logs = 0;
    if (!fs::exists(dir)) return 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
      std::ifstream in(entry.path());
      std::string header, line;
      std::getline(in, header);
      u64 p = 0;
      int n = 0;
      if (std::sscanf(header.c_str(), "# planar-verdicts v1 p=%lu n=%d", &p,
                      &n) != 2) {
        continue;
      }
      const FieldCtx ctx = make_field(p, n);
      std::vector<ExponentVerdict> verdicts;
      while (std::getline(in, line)) {
        auto v = parse_verdict_line(line);
        if (!v) {
          ++witnesses_;  // an unreadable line counts as a failed audit
          continue;
        }
        verdicts.push_back(*v);
      }
      audit(ctx, verdicts);
      ++logs;
    }
    return logs;
  }

  const SearchConfig& config() const { return config_; }
  u64 witnesses() const { return witnesses_; }
  u64 valid_witnesses() const { return valid_witnesses_; }

 private:
  SearchConfig config_;
  ClassificationCache cache_;
  std::map<std::pair<u64, int>, std::vector<u64>> done_;
  u64 witnesses_ = 0;
  u64 valid_witnesses_ = 0;
};

struct Result {
  bool pass;
  std::string detail;
};

Result check_tier(Suite& suite, const std::vector<Field>& tier,
                  double per_field_limit) {
  bool pass = true;
  std::ostringstream detail;
  for (const auto& f : tier) {
    const auto start = Clock::now();
    const auto c = suite.classify(f.p, f.n);
    const double s = seconds_since(start);
    const bool ok = c.complete && c.class_count == f.expected &&
                    (per_field_limit <= 0 || s < per_field_limit);
    pass = pass && ok;
    detail << " (" << f.n << "," << f.p << ")=" << c.class_count
           << (ok ? "" : "!") << "[" << fmt_seconds(s) << "]";
  }
  return {pass, detail.str()};
}

Result check_no_new_planar(Suite& suite) {
  u64 fields = 0;
  std::ostringstream bad;
  for (const auto* tier : {&kTierA, &kTierB, &kTierC}) {
    for (const auto& f : *tier) {
      const auto c = suite.classify(f.p, f.n);
      ++fields;
      if (c.planar_canonical != known_planar_exponents(f.p, f.n)) {
        bad << " (" << f.n << "," << f.p << ")";
      }
    }
  }
  if (!bad.str().empty()) return {false, "differs on" + bad.str()};
  return {true, std::to_string(fields) + " fields equal the known families"};
}

Result check_oracle_equivalence(Suite& suite) {
  std::vector<std::pair<u64, int>> fields;
  for (u64 p = 3; p <= 729; p += 2) {
    if (!is_prime(p)) continue;
    for (int n = 1; checked_field_order(p, n) <= 729; ++n) {
      fields.push_back({p, n});
    }
  }
  fields.push_back({3, 7});
  std::ostringstream bad;
  for (auto [p, n] : fields) {
    const auto search = suite.run(p, n, Method::kSearch);
    const auto oracle = suite.run(p, n, Method::kOracle);
    if (search.planar_canonical != oracle.planar_canonical) {
      bad << " (" << n << "," << p << ")";
    }
  }
  if (!bad.str().empty()) return {false, "differs on" + bad.str()};
  return {true, std::to_string(fields.size()) +
                    " fields with q <= 729 plus F_3^7 agree"};
}

Result check_closed_forms(Suite& suite) {
  SearchConfig config = suite.config();
  config.oracle_bound = 2401;  // F_{7^4}
  std::ostringstream bad;
  int fields = 0;
  for (u64 p : {3, 5, 7}) {
    for (int d = 1; d <= 4; ++d) {
      if (!has_small_subfield_rule(p, d)) continue;
      const FieldCtx ctx = make_field(p, d);
      std::vector<u64> congruence;
      for (u64 k = 2; k <= max_exponent(ctx.q()); ++k) {
        if (small_subfield_allows(k, p, d)) congruence.push_back(k);
      }
      const auto oracle = oracle_planar_exponents(ctx, config.oracle_bound);
      const auto record = suite.run(p, d, Method::kOracle, &config);
      ++fields;
      if (oracle != congruence || record.planar_canonical !=
                                      analytic_classification(p, d)
                                          .planar_canonical) {
        bad << " (" << d << "," << p << ")";
      }
    }
  }
  if (!bad.str().empty()) return {false, "differs on" + bad.str()};
  return {true, std::to_string(fields) + " fields match their congruence sets"};
}

Result check_no_false_negatives() {
  u64 runs = 0;
  for (auto [p, n] : {std::pair<u64, int>{3, 5}, {5, 5}}) {
    const FieldCtx ctx = make_field(p, n);
    const DeltaKernel kernel(ctx);
    const u64 N = default_N(ctx.q());
    for (u64 seed = 0; seed < 100; ++seed) {
      for (u64 k : known_planar_exponents(p, n)) {
        for (u64 member : exponent_orbit(k, p, n)) {
          RngState rng = RngState::for_exponent(seed, p, n, member);
          ++runs;
          if (!collision_search(kernel, member, N, rng).candidate) {
            return {false, "collision on planar k=" + std::to_string(member) +
                               " seed=" + std::to_string(seed)};
          }
        }
      }
    }
  }
  return {true, std::to_string(runs) +
                    " searches over 100 seeds, all Candidate"};
}

Result check_determinism(unsigned workers) {
  const fs::path root = fs::temp_directory_path() /
                        ("planar_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  std::vector<std::vector<std::string>> digests(2);
  std::ostringstream sink;
  for (int run = 0; run < 2; ++run) {
    SearchConfig config;
    config.master_seed = 20260101;
    config.workers = run == 0 ? 1 : workers;
    config.cache_dir = root / ("run" + std::to_string(run));
    for (const auto& f : kTierA) {
      digests[run].push_back(
          run_classification(f.p, f.n, config, {}, sink).record.log_digest);
    }
  }
  fs::remove_all(root);
  if (digests[0] != digests[1]) return {false, "verdict-log digests differ"};
  std::string detail = "digests";
  for (const auto& d : digests[0]) detail += " " + d;
  return {true, detail};
}

// Property suites: >= 10^4 randomized cases each.
Result check_properties() {
  std::mt19937_64 gen(1);
  u64 ff_cases = 0, sieve_cases = 0, soundness_cases = 0;
  for (auto [p, n] : {std::pair<u64, int>{3, 5}, {5, 4}, {7, 7}, {31, 5},
                      {3, 20}}) {
    const FieldCtx f = make_field(p, n);
    RngState rng(p * 131 + n);
    for (int i = 0; i < 2000; ++i, ++ff_cases) {
      const Elem a = random_element(f, rng), b = random_element(f, rng),
                 c = random_element(f, rng);
      const bool axioms =
          add(f, add(f, a, b), c) == add(f, a, add(f, b, c)) &&
          mul(f, mul(f, a, b), c) == mul(f, a, mul(f, b, c)) &&
          add(f, a, b) == add(f, b, a) && mul(f, a, b) == mul(f, b, a) &&
          mul(f, a, add(f, b, c)) == add(f, mul(f, a, b), mul(f, a, c)) &&
          add(f, a, sub(f, f.zero(), a)) == f.zero() &&
          mul(f, a, f.one()) == a;
      const bool frobenius = pow(f, add(f, a, b), p) ==
                             add(f, pow(f, a, p), pow(f, b, p));
      const bool fermat =
          pow(f, a, f.q()) == a &&
          (a == f.zero() || pow(f, a, f.q() - 1) == f.one());
      if (!axioms || !frobenius || !fermat) {
        return {false, "field property violated over F_" + std::to_string(p) +
                           "^" + std::to_string(n)};
      }
    }
  }
  for (auto [p, n] : {std::pair<u64, int>{3, 6}, {3, 12}, {5, 8}, {7, 6},
                      {11, 5}, {13, 9}}) {
    const u64 q = checked_field_order(p, n);
    const auto rules = SubfieldRuleSet::build(p, n, [](u64 sp, int d) {
      return std::optional<std::vector<u64>>(known_planar_exponents(sp, d));
    });
    for (int i = 0; i < 2000; ++i, ++sieve_cases) {
      const u64 k = gen() % (q - 3) + 2;
      const u64 c = canonical_exponent(k, p, n);
      bool ok = canonical_exponent(c, p, n) == c && c % p != 0;
      for (u64 m : exponent_orbit(k, p, n)) {
        ok = ok && gcd_filter(m, q) == gcd_filter(k, q) &&
             subfield_filter(m, p, n, rules) == subfield_filter(k, p, n, rules);
      }
      if (!ok) {
        return {false, "sieve property violated at k=" + std::to_string(k)};
      }
    }
  }
  for (u64 p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
    for (int n = 1; n <= 32; ++n) {
      const u64 q = checked_field_order(p, n);
      if (q == 0 || q > (u64{1} << 50)) continue;
      const auto rules = SubfieldRuleSet::build(p, n, [](u64 sp, int d) {
        return std::optional<std::vector<u64>>(known_planar_exponents(sp, d));
      });
      for (u64 k : known_planar_exponents(p, n)) {
        for (u64 m : exponent_orbit(k, p, n)) {
          ++soundness_cases;
          if (!gcd_filter(m, q) || !subfield_filter(m, p, n, rules)) {
            return {false, "known exponent filtered: k=" + std::to_string(m)};
          }
        }
      }
    }
  }
  const bool enough =
      ff_cases >= 10000 && sieve_cases >= 10000 && soundness_cases >= 10000;
  return {enough, "ff " + std::to_string(ff_cases) + ", sieve " +
                      std::to_string(sieve_cases) + ", soundness " +
                      std::to_string(soundness_cases) + " cases"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> only;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--only", only, "Criteria to run")->delimiter(',');
  app.add_option("--workers", workers)->check(CLI::PositiveNumber);
  std::string state;
  app.add_option("--state", state, "Persistent cache directory");
  CLI11_PARSE(app, argc, argv);

  const bool scratch = state.empty();
  const fs::path state_dir =
      scratch ? fs::temp_directory_path() /
                    ("planar_acceptance_state_" + std::to_string(::getpid()))
              : fs::path(state);
  Suite suite(workers, state_dir);
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
      {"tier A reference counts",
       [&] { return check_tier(suite, kTierA, 10.0); }},
      {"tier B reference counts", [&] { return check_tier(suite, kTierB, 0); }},
      {"tier C reference counts", [&] { return check_tier(suite, kTierC, 0); }},
      {"no new planar monomials", [&] { return check_no_new_planar(suite); }},
      {"search equals oracle", [&] { return check_oracle_equivalence(suite); }},
      {"closed forms match oracle", [&] { return check_closed_forms(suite); }},
      {"no false negatives", [] { return check_no_false_negatives(); }},
      {"witness audit",
       [&] {
         if (suite.audit_logs() == 0) {
           check_tier(suite, kTierA, 0);
           suite.audit_logs();
         }
         return Result{suite.witnesses() > 0 &&
                           suite.valid_witnesses() == suite.witnesses(),
                       std::to_string(suite.valid_witnesses()) + "/" +
                           std::to_string(suite.witnesses()) +
                           " witnesses revalidate"};
       }},
      {"deterministic verdict logs", [&] { return check_determinism(workers); }},
      {"property suites", [] { return check_properties(); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) {
      continue;
    }
    const auto start = Clock::now();
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    if (!r.pass) ++failures;
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << id
              << "  " << criteria[i].first << ": " << r.detail << "  ["
              << fmt_seconds(seconds_since(start)) << "]" << std::endl;
  }
  if (scratch) fs::remove_all(state_dir);
  return failures == 0 ? 0 : 1;
}
