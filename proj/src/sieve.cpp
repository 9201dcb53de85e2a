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

#include "planar/sieve.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "planar/ff.hpp"

namespace planar {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) {
  if (((a | b) >> 32) == 0) return a * b % m;
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 order_minus_one(u64 p, int n) {
  const Code q = checked_field_order(p, n);
  if (q == 0) throw std::invalid_argument("field order exceeds 2^63");
  return q - 1;
}

}  // namespace

u64 ipow(u64 base, int exp) {
  u64 r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

bool gcd_filter(u64 k, u64 q) { return std::gcd(k, q - 1) == 2; }

u64 canonical_exponent(u64 k, u64 p, int n) {
  const u64 m = order_minus_one(p, n);
  u64 best = k;
  u64 cur = k % m;
  for (int a = 1; a < n; ++a) {
    cur = mulmod(cur, p, m);
    best = std::min(best, cur);
  }
  return best;
}

bool is_canonical(u64 k, u64 p, int n) {
  const u64 m = order_minus_one(p, n);
  u64 cur = k % m;
  for (int a = 1; a < n; ++a) {
    cur = mulmod(cur, p, m);
    if (cur < k) return false;
  }
  return true;
}

std::vector<u64> exponent_orbit(u64 k, u64 p, int n) {
  const u64 m = order_minus_one(p, n);
  std::vector<u64> orbit;
  orbit.reserve(n);
  u64 cur = k;
  orbit.push_back(cur);
  cur %= m;
  for (int a = 1; a < n; ++a) {
    cur = mulmod(cur, p, m);
    orbit.push_back(cur);
  }
  return orbit;
}

bool has_small_subfield_rule(u64 p, int d) {
  return (d >= 1 && d <= 3) || (d == 4 && p >= 5);
}

bool small_subfield_allows(u64 k, u64 p, int d) {
  if (!has_small_subfield_rule(p, d)) {
    throw std::invalid_argument(
        "no closed-form subfield rule for this degree and characteristic");
  }
  const u64 m = ipow(p, d) - 1;
  const u64 r = k % m;
  switch (d) {
    case 1:
      return r == 2 % m;
    case 2:
      return r == 2 % m || r == (2 * p) % m;
    case 3:
      for (u64 pi = 1; pi <= p * p; pi *= p) {
        for (u64 pj = 1; pj <= p * p; pj *= p) {
          if (r == (pi + pj) % m) return true;
        }
      }
      return false;
    default:
      for (u64 pj = 1; pj <= p * p * p; pj *= p) {
        if (r == (2 * pj) % m) return true;
      }
      return false;
  }
}

std::vector<int> SubfieldRuleSet::cached_divisors(u64 p, int n) {
  std::vector<int> out;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0 && !has_small_subfield_rule(p, d)) out.push_back(d);
  }
  return out;
}

SubfieldRuleSet SubfieldRuleSet::build(u64 p, int n,
                                       const SubfieldLookup& lookup) {
  SubfieldRuleSet set;
  set.p_ = p;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    SubfieldRule rule;
    rule.degree = d;
    rule.modulus = ipow(p, d) - 1;
    if (has_small_subfield_rule(p, d)) {
      rule.closed_form = true;
      set.rules_.push_back(std::move(rule));
      continue;
    }
    std::optional<std::vector<u64>> planar;
    if (lookup) planar = lookup(p, d);
    if (!planar) {
      set.complete_ = false;
      continue;
    }
    rule.allowed.assign(rule.modulus, false);
    for (u64 k : *planar) {
      for (u64 member : exponent_orbit(k, p, d)) {
        rule.allowed[member % rule.modulus] = true;
      }
    }
    set.rules_.push_back(std::move(rule));
  }
  return set;
}

bool SubfieldRuleSet::allows(u64 k) const {
  for (const auto& rule : rules_) {
    if (rule.closed_form) {
      if (!small_subfield_allows(k, p_, rule.degree)) return false;
    } else if (!rule.allowed[k % rule.modulus]) {
      return false;
    }
  }
  return true;
}

bool subfield_filter(u64 k, u64 /*p*/, int /*n*/,
                     const SubfieldRuleSet& rules) {
  return rules.allows(k);
}

BoundVerdict zieve_bound_filter(u64 k, u64 p, int n,
                                std::span<const u64> known) {
  const u64 canon = canonical_exponent(k, p, n);
  if (std::find(known.begin(), known.end(), canon) != known.end()) {
    return BoundVerdict::kKnownFamily;
  }
  if (k % p == 0) return BoundVerdict::kMustSearch;
  const u128 km1 = k - 1;
  const u128 square = km1 * km1;
  const u128 q = checked_field_order(p, n);
  // (k-1)^4 <= q, checked without overflowing.
  if (square <= q && square * square <= q) {
    return BoundVerdict::kProvablyNotPlanar;
  }
  return BoundVerdict::kMustSearch;
}

bool are_graph_equivalent_monomials(u64 k, u64 l, u64 p, int n) {
  const u64 m = order_minus_one(p, n);
  const u64 kk = k % m;
  const u64 ll = l % m;
  const u64 prod = mulmod(kk, ll, m);
  u64 pa = 1 % m;
  u64 orbit = kk;
  for (int a = 0; a < n; ++a) {
    if (orbit == ll || prod == pa) return true;
    orbit = mulmod(orbit, p, m);
    pa = mulmod(pa, p, m);
  }
  return false;
}

}  // namespace planar
