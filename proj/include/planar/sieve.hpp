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

// Necessary conditions that cut the exponent range of F_{p^n} down to the
// canonical candidates worth searching.
//
// Exponents k are taken modulo q - 1. The p-orbit of k is
// {p^a k mod (q - 1) : 0 <= a < n}; its minimum is the canonical
// representative, one per graph-equivalence class of planar monomials.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace planar {

std::uint64_t ipow(std::uint64_t base, int exp);

// gcd(k, q - 1) == 2. False means X^k is certainly not planar.
bool gcd_filter(std::uint64_t k, std::uint64_t q);

std::uint64_t canonical_exponent(std::uint64_t k, std::uint64_t p, int n);
// Early-exit form of canonical_exponent(k, p, n) == k.
bool is_canonical(std::uint64_t k, std::uint64_t p, int n);

// Every member of the p-orbit of k modulo p^n - 1, in generation order.
std::vector<std::uint64_t> exponent_orbit(std::uint64_t k, std::uint64_t p,
                                          int n);

// Closed-form planarity of X^k over F_{p^d} for d in {1, 2, 3} and for d = 4
// when p >= 5:
//   d = 1: k = 2 mod (p - 1)
//   d = 2: k = 2 or 2p mod (p^2 - 1)
//   d = 3: k = p^i + p^j mod (p^3 - 1)
//   d = 4: k = 2 p^j mod (p^4 - 1)
// Throws std::invalid_argument for d outside that range (including d = 4,
// p = 3, which has no closed form here).
bool small_subfield_allows(std::uint64_t k, std::uint64_t p, int d);
bool has_small_subfield_rule(std::uint64_t p, int d);

// Returns the complete list of canonical planar exponents over F_{p^d}, or
// nullopt when no finished classification is available.
using SubfieldLookup =
    std::function<std::optional<std::vector<std::uint64_t>>(std::uint64_t p,
                                                            int d)>;

struct SubfieldRule {
  int degree = 0;
  std::uint64_t modulus = 0;  // p^degree - 1
  bool closed_form = false;
  // Allowed residues modulo `modulus` when not closed-form; closed under
  // multiplication by p.
  std::vector<bool> allowed;
};

class SubfieldRuleSet {
 public:
  SubfieldRuleSet() = default;

  // Closed-form rules for every proper divisor that has one; every other
  // proper divisor d is added from `lookup` when it returns a classification.
  static SubfieldRuleSet build(std::uint64_t p, int n,
                               const SubfieldLookup& lookup = {});

  // Proper divisors d of n that need a finished classification of F_{p^d}
  // before a full rule set can be built.
  static std::vector<int> cached_divisors(std::uint64_t p, int n);

  bool allows(std::uint64_t k) const;
  std::span<const SubfieldRule> rules() const { return rules_; }
  // True iff every divisor listed by cached_divisors has a rule.
  bool complete() const { return complete_; }

 private:
  std::uint64_t p_ = 0;
  std::vector<SubfieldRule> rules_;
  bool complete_ = true;
};

// Planarity restricts to every subfield; false means certainly not planar.
bool subfield_filter(std::uint64_t k, std::uint64_t p, int n,
                     const SubfieldRuleSet& rules);

enum class BoundVerdict { kMustSearch, kProvablyNotPlanar, kKnownFamily };

// Zieve's bound: for q >= (k - 1)^4 and p not dividing k, X^k is planar only
// if it is one of the known families. `known` holds canonical exponents.
BoundVerdict zieve_bound_filter(std::uint64_t k, std::uint64_t p, int n,
                                std::span<const std::uint64_t> known);

// Monomial graph equivalence: l = p^a k or k l = p^a mod (q - 1) for some a.
bool are_graph_equivalent_monomials(std::uint64_t k, std::uint64_t l,
                                    std::uint64_t p, int n);

}  // namespace planar
