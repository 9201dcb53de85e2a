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
#include <random>
#include <span>
#include <vector>

namespace planar {

// Dense integer key of a field element: sum of coeffs[i] * p^i.
using Code = std::uint64_t;

inline constexpr int kMaxDegree = 40;
// Field orders are kept strictly below 2^63 so codes fit a single word.
inline constexpr Code kMaxFieldOrder = Code{1} << 63;

struct Elem {
  std::vector<std::uint64_t> coeffs;  // length n, each in [0, p)

  friend bool operator==(const Elem&, const Elem&) = default;
};

// Immutable description of F_{p^n} = F_p[X]/(m(X)).
class FieldCtx {
 public:
  std::uint64_t p() const { return p_; }
  int n() const { return n_; }
  Code q() const { return q_; }
  // Monic modulus, n + 1 coefficients from the constant term upward.
  std::span<const std::uint64_t> modulus() const { return modulus_; }
  // weights()[i] == p^i for i in [0, n].
  std::span<const Code> weights() const { return weights_; }

  Elem zero() const { return Elem{std::vector<std::uint64_t>(n_, 0)}; }
  Elem one() const;

  bool operator==(const FieldCtx& other) const {
    return p_ == other.p_ && n_ == other.n_ && modulus_ == other.modulus_;
  }

 private:
  friend FieldCtx make_field(std::uint64_t p, int n);
  FieldCtx(std::uint64_t p, int n, std::vector<std::uint64_t> modulus);

  std::uint64_t p_;
  int n_;
  Code q_;
  std::vector<std::uint64_t> modulus_;
  std::vector<Code> weights_;
};

bool is_prime(std::uint64_t v);

// p^n, or 0 if the result would reach kMaxFieldOrder.
Code checked_field_order(std::uint64_t p, int n);

// Builds F_{p^n} with the lexicographically smallest monic irreducible modulus
// (coefficients compared from the constant term upward). Throws
// std::invalid_argument for p == 2, composite p, n < 1, or p^n >= 2^63.
FieldCtx make_field(std::uint64_t p, int n);

// Rabin's test for a monic polynomial given constant term first.
bool is_irreducible(std::span<const std::uint64_t> poly, std::uint64_t p);

Elem add(const FieldCtx& ctx, const Elem& a, const Elem& b);
Elem sub(const FieldCtx& ctx, const Elem& a, const Elem& b);
Elem mul(const FieldCtx& ctx, const Elem& a, const Elem& b);
// Square-and-multiply; pow(x, 0) == 1 for every x including 0.
Elem pow(const FieldCtx& ctx, const Elem& x, std::uint64_t k);
// (x + 1)^k - x^k.
Elem delta(const FieldCtx& ctx, std::uint64_t k, const Elem& x);

Elem element_from_code(const FieldCtx& ctx, Code code);
Code code_of(const FieldCtx& ctx, const Elem& e);

// Digit-wise arithmetic directly on codes.
Code add_codes(const FieldCtx& ctx, Code a, Code b);
Code sub_codes(const FieldCtx& ctx, Code a, Code b);
// Code of x + 1: only the constant coefficient changes.
inline Code increment_code(std::uint64_t p, Code x) {
  return (x % p == p - 1) ? x - (p - 1) : x + 1;
}

// Deterministic 64-bit generator owned by one worker at a time.
class RngState {
 public:
  explicit RngState(std::uint64_t seed) : engine_(seed) {}

  // Stream for one exponent, domain separated by (p, n, k) under the master
  // seed. Identical arguments give identical streams.
  static RngState for_exponent(std::uint64_t master_seed, std::uint64_t p,
                               int n, std::uint64_t k);

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Uniform code in [0, q) via a 64x64->128 multiply-high of one draw.
inline Code random_code(Code q, RngState& rng) {
  return static_cast<Code>(
      (static_cast<unsigned __int128>(rng.next()) * q) >> 64);
}

Elem random_element(const FieldCtx& ctx, RngState& rng);

}  // namespace planar
