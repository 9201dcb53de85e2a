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

#include <bit>

#include "kernels_internal.hpp"

namespace planar::kernels::scalar {
namespace {

using u64 = std::uint64_t;

struct Poly {
  u64 c[kMaxDegree];
};

// Requires n * (p-1)^2 + p < 2^64 so both accumulation passes fit a word.
void mul(const KernelField& f, const Poly& a, const Poly& b, Poly& out) {
  const int n = f.n;
  const u64 p = f.p;
  u64 prod[2 * kMaxDegree - 1] = {};
  for (int i = 0; i < n; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j < n; ++j) prod[i + j] += a.c[i] * b.c[j];
  }
  for (int s = 0; s < 2 * n - 1; ++s) prod[s] %= p;
  for (int j = 0; j < n; ++j) {
    u64 acc = prod[j];
    for (int t = 0; t + 1 < n; ++t) acc += prod[n + t] * f.reduction[t * n + j];
    out.c[j] = acc % p;
  }
}

void pow(const KernelField& f, const Poly& x, u64 k, Poly& out) {
  if (k == 0) {
    out = Poly{};
    out.c[0] = 1 % f.p;
    return;
  }
  Poly acc = x;
  for (int bit = std::bit_width(k) - 2; bit >= 0; --bit) {
    mul(f, acc, acc, acc);
    if ((k >> bit) & 1) mul(f, acc, x, acc);
  }
  out = acc;
}

Code encode(const KernelField& f, const Poly& a) {
  Code code = 0;
  for (int i = 0; i < f.n; ++i) code += a.c[i] * f.weight[i];
  return code;
}

}  // namespace

void power_batch(const KernelField& f, u64 k, const Code* in, Code* out,
                 std::size_t count) {
  Poly x{};
  Poly r{};
  for (std::size_t idx = 0; idx < count; ++idx) {
    decode_digits(f, in[idx], x.c);
    pow(f, x, k, r);
    out[idx] = encode(f, r);
  }
}

void delta_batch(const KernelField& f, u64 k, const Code* in, Code* out,
                 std::size_t count) {
  Poly x{};
  Poly x1{};
  Poly r{};
  Poly r1{};
  for (std::size_t idx = 0; idx < count; ++idx) {
    decode_digits(f, in[idx], x.c);
    x1 = x;
    x1.c[0] = x.c[0] + 1 == f.p ? 0 : x.c[0] + 1;
    pow(f, x, k, r);
    pow(f, x1, k, r1);
    for (int i = 0; i < f.n; ++i) {
      r1.c[i] = r1.c[i] >= r.c[i] ? r1.c[i] - r.c[i] : r1.c[i] + f.p - r.c[i];
    }
    out[idx] = encode(f, r1);
  }
}

}  // namespace planar::kernels::scalar
