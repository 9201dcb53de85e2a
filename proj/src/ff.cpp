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

#include "planar/ff.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace planar {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 base, u64 e, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (e != 0) {
    if (e & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

u64 inverse_mod_prime(u64 a, u64 p) { return powmod(a, p - 2, p); }

// Polynomials over F_p, constant term first, no trailing zeros (zero is {}).
using Poly = std::vector<u64>;

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// f mod g with g monic.
Poly poly_mod(Poly f, const Poly& g, u64 p) {
  trim(f);
  const size_t dg = g.size() - 1;
  while (f.size() > dg) {
    const u64 lead = f.back();
    const size_t shift = f.size() - 1 - dg;
    if (lead != 0) {
      for (size_t i = 0; i <= dg; ++i) {
        f[shift + i] = (f[shift + i] + mulmod(p - lead, g[i], p)) % p;
      }
    }
    f.pop_back();
    trim(f);
  }
  return f;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& g, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = (prod[i + j] + mulmod(a[i], b[j], p)) % p;
    }
  }
  return poly_mod(std::move(prod), g, p);
}

Poly poly_powmod(Poly base, u64 e, const Poly& g, u64 p) {
  Poly r = poly_mod(Poly{1}, g, p);
  base = poly_mod(std::move(base), g, p);
  while (e != 0) {
    if (e & 1) r = poly_mulmod(r, base, g, p);
    base = poly_mulmod(base, base, g, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    const u64 inv = inverse_mod_prime(b.back(), p);
    for (auto& c : b) c = mulmod(c, inv, p);
    a = poly_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

std::vector<u64> prime_divisors(u64 v) {
  std::vector<u64> out;
  for (u64 r = 2; r * r <= v; ++r) {
    if (v % r == 0) {
      out.push_back(r);
      while (v % r == 0) v /= r;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

// X^(p^times) mod g by repeated p-th powering.
Poly frobenius_power_of_x(u64 times, const Poly& g, u64 p) {
  Poly x = poly_mod(Poly{0, 1}, g, p);
  for (u64 i = 0; i < times; ++i) x = poly_powmod(x, p, g, p);
  return x;
}

Poly sub_x(Poly f, u64 p) {
  if (f.size() < 2) f.resize(2, 0);
  f[1] = (f[1] + p - 1) % p;
  trim(f);
  return f;
}

u64 splitmix64(u64 x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_same_shape(const FieldCtx& ctx, const Elem& a) {
  if (a.coeffs.size() != static_cast<size_t>(ctx.n())) {
    throw std::invalid_argument("element has wrong degree for field");
  }
}

}  // namespace

bool is_prime(u64 v) {
  if (v < 2) return false;
  for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                    29ULL, 31ULL, 37ULL}) {
    if (v % small == 0) return v == small;
  }
  u64 d = v - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for all 64-bit integers.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, v);
    if (x == 1 || x == v - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, v);
      if (x == v - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Code checked_field_order(u64 p, int n) {
  if (p < 2 || n < 1) return 0;
  u128 q = 1;
  for (int i = 0; i < n; ++i) {
    q *= p;
    if (q >= kMaxFieldOrder) return 0;
  }
  return static_cast<Code>(q);
}

bool is_irreducible(std::span<const u64> poly, u64 p) {
  if (poly.size() < 2) throw std::invalid_argument("polynomial degree < 1");
  if (poly.back() != 1) throw std::invalid_argument("polynomial not monic");
  for (u64 c : poly) {
    if (c >= p) throw std::invalid_argument("coefficient not reduced");
  }
  const u64 d = poly.size() - 1;
  if (d == 1) return true;
  const Poly g(poly.begin(), poly.end());
  if (g[0] == 0) return false;  // divisible by X
  if (!sub_x(frobenius_power_of_x(d, g, p), p).empty()) return false;
  for (u64 r : prime_divisors(d)) {
    const Poly h = sub_x(frobenius_power_of_x(d / r, g, p), p);
    if (poly_gcd(g, h, p).size() != 1) return false;
  }
  return true;
}

FieldCtx::FieldCtx(u64 p, int n, std::vector<u64> modulus)
    : p_(p), n_(n), q_(checked_field_order(p, n)), modulus_(std::move(modulus)) {
  weights_.resize(n + 1);
  weights_[0] = 1;
  for (int i = 1; i < n; ++i) weights_[i] = weights_[i - 1] * p;
  weights_[n] = q_;
}

Elem FieldCtx::one() const {
  Elem e = zero();
  e.coeffs[0] = 1;
  return e;
}

FieldCtx make_field(u64 p, int n) {
  if (p == 2) {
    throw std::invalid_argument(
        "characteristic 2 rejected: planar functions need odd characteristic");
  }
  if (!is_prime(p)) {
    throw std::invalid_argument("characteristic " + std::to_string(p) +
                                " is not prime");
  }
  if (n < 1) throw std::invalid_argument("extension degree must be >= 1");
  if (n > kMaxDegree || checked_field_order(p, n) == 0) {
    throw std::invalid_argument("field order exceeds 2^63");
  }
  if (n == 1) return FieldCtx(p, 1, {0, 1});

  // Candidate t enumerates coefficient tuples with c_0 most significant, which
  // is lexicographic order from the constant term upward.
  std::vector<u64> poly(n + 1, 0);
  poly[n] = 1;
  const Code count = checked_field_order(p, n);
  // Tuples with c_0 = 0 (divisible by X) occupy the first q / p candidates.
  for (Code t = count / p; t < count; ++t) {
    Code rest = t;
    for (int i = n - 1; i >= 0; --i) {
      poly[i] = rest % p;
      rest /= p;
    }
    if (is_irreducible(poly, p)) return FieldCtx(p, n, poly);
  }
  throw std::logic_error("no irreducible polynomial found");
}

Elem add(const FieldCtx& ctx, const Elem& a, const Elem& b) {
  check_same_shape(ctx, a);
  check_same_shape(ctx, b);
  Elem r = a;
  for (int i = 0; i < ctx.n(); ++i) {
    const u64 s = a.coeffs[i] + b.coeffs[i];
    r.coeffs[i] = s >= ctx.p() ? s - ctx.p() : s;
  }
  return r;
}

Elem sub(const FieldCtx& ctx, const Elem& a, const Elem& b) {
  check_same_shape(ctx, a);
  check_same_shape(ctx, b);
  Elem r = a;
  for (int i = 0; i < ctx.n(); ++i) {
    r.coeffs[i] = a.coeffs[i] >= b.coeffs[i]
                      ? a.coeffs[i] - b.coeffs[i]
                      : a.coeffs[i] + ctx.p() - b.coeffs[i];
  }
  return r;
}

Elem mul(const FieldCtx& ctx, const Elem& a, const Elem& b) {
  check_same_shape(ctx, a);
  check_same_shape(ctx, b);
  const u64 p = ctx.p();
  const int n = ctx.n();
  std::vector<u64> prod(2 * n - 1, 0);
  for (int i = 0; i < n; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (int j = 0; j < n; ++j) {
      prod[i + j] = (prod[i + j] + mulmod(a.coeffs[i], b.coeffs[j], p)) % p;
    }
  }
  // Fold X^(n+t) = -sum m_j X^(j+t) from the top down.
  const auto m = ctx.modulus();
  for (int top = 2 * n - 2; top >= n; --top) {
    const u64 lead = prod[top];
    if (lead == 0) continue;
    prod[top] = 0;
    for (int j = 0; j < n; ++j) {
      const int idx = top - n + j;
      prod[idx] = (prod[idx] + mulmod(p - lead, m[j], p)) % p;
    }
  }
  prod.resize(n);
  return Elem{std::move(prod)};
}

Elem pow(const FieldCtx& ctx, const Elem& x, u64 k) {
  Elem result = ctx.one();
  Elem base = x;
  while (k != 0) {
    if (k & 1) result = mul(ctx, result, base);
    k >>= 1;
    if (k != 0) base = mul(ctx, base, base);
  }
  return result;
}

Elem delta(const FieldCtx& ctx, u64 k, const Elem& x) {
  return sub(ctx, pow(ctx, add(ctx, x, ctx.one()), k), pow(ctx, x, k));
}

Elem element_from_code(const FieldCtx& ctx, Code code) {
  if (code >= ctx.q()) throw std::out_of_range("element code out of range");
  Elem e = ctx.zero();
  for (int i = 0; i < ctx.n(); ++i) {
    e.coeffs[i] = code % ctx.p();
    code /= ctx.p();
  }
  return e;
}

Code code_of(const FieldCtx& ctx, const Elem& e) {
  check_same_shape(ctx, e);
  Code code = 0;
  for (int i = ctx.n() - 1; i >= 0; --i) {
    if (e.coeffs[i] >= ctx.p()) {
      throw std::invalid_argument("coefficient not reduced");
    }
    code = code * ctx.p() + e.coeffs[i];
  }
  return code;
}

Code add_codes(const FieldCtx& ctx, Code a, Code b) {
  const u64 p = ctx.p();
  Code out = 0;
  for (int i = 0; i < ctx.n(); ++i) {
    const u64 s = a % p + b % p;
    out += (s >= p ? s - p : s) * ctx.weights()[i];
    a /= p;
    b /= p;
  }
  return out;
}

Code sub_codes(const FieldCtx& ctx, Code a, Code b) {
  const u64 p = ctx.p();
  Code out = 0;
  for (int i = 0; i < ctx.n(); ++i) {
    const u64 da = a % p;
    const u64 db = b % p;
    out += (da >= db ? da - db : da + p - db) * ctx.weights()[i];
    a /= p;
    b /= p;
  }
  return out;
}

RngState RngState::for_exponent(u64 master_seed, u64 p, int n, u64 k) {
  u64 h = splitmix64(master_seed ^ 0x706c616e61722d6bULL);
  h = splitmix64(h ^ p);
  h = splitmix64(h ^ static_cast<u64>(n));
  h = splitmix64(h ^ k);
  return RngState(h);
}

Elem random_element(const FieldCtx& ctx, RngState& rng) {
  return element_from_code(ctx, random_code(ctx.q(), rng));
}

}  // namespace planar
