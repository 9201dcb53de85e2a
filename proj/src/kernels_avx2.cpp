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

// Built with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>

#include "kernels_internal.hpp"

namespace planar::kernels::avx2 {
namespace {

struct Ops {
  using V = __m256;
  static constexpr std::size_t kLanes = 8;

  static V zero() { return _mm256_setzero_ps(); }
  static V set1(float v) { return _mm256_set1_ps(v); }
  static V load(const float* src) { return _mm256_load_ps(src); }
  static void store(float* dst, V v) { _mm256_store_ps(dst, v); }
  static V add(V a, V b) { return _mm256_add_ps(a, b); }
  static V sub(V a, V b) { return _mm256_sub_ps(a, b); }
  static V mul(V a, V b) { return _mm256_mul_ps(a, b); }
  static V fmadd(V a, V b, V c) { return _mm256_fmadd_ps(a, b, c); }
  static V fnmadd(V a, V b, V c) { return _mm256_fnmadd_ps(a, b, c); }
  static V floor(V a) { return _mm256_floor_ps(a); }
  // Maps r in (-p, 2p) to [0, p).
  static V fix(V r, V p) {
    const V neg = _mm256_cmp_ps(r, _mm256_setzero_ps(), _CMP_LT_OQ);
    r = _mm256_add_ps(r, _mm256_and_ps(neg, p));
    const V big = _mm256_cmp_ps(r, p, _CMP_GE_OQ);
    return _mm256_sub_ps(r, _mm256_and_ps(big, p));
  }
};

#include "kernels_simd.inl"

}  // namespace

void power_batch(const KernelField& f, std::uint64_t k, const Code* in,
                 Code* out, std::size_t count) {
  pick_power(f)(f, k, in, out, count);
}

void delta_batch(const KernelField& f, std::uint64_t k, const Code* in,
                 Code* out, std::size_t count) {
  pick_delta(f)(f, k, in, out, count);
}

}  // namespace planar::kernels::avx2
