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

// Built with -mavx512f; only reached after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>

#include "kernels_internal.hpp"

namespace planar::kernels::avx512 {
namespace {

struct Ops {
  using V = __m512;
  static constexpr std::size_t kLanes = 16;

  static V zero() { return _mm512_setzero_ps(); }
  static V set1(float v) { return _mm512_set1_ps(v); }
  static V load(const float* src) { return _mm512_load_ps(src); }
  static void store(float* dst, V v) { _mm512_store_ps(dst, v); }
  static V add(V a, V b) { return _mm512_add_ps(a, b); }
  static V sub(V a, V b) { return _mm512_sub_ps(a, b); }
  static V mul(V a, V b) { return _mm512_mul_ps(a, b); }
  static V fmadd(V a, V b, V c) { return _mm512_fmadd_ps(a, b, c); }
  static V fnmadd(V a, V b, V c) { return _mm512_fnmadd_ps(a, b, c); }
  static V floor(V a) {
    return _mm512_roundscale_ps(a, _MM_FROUND_TO_NEG_INF | _MM_FROUND_NO_EXC);
  }
  static V fix(V r, V p) {
    const __mmask16 neg = _mm512_cmp_ps_mask(r, _mm512_setzero_ps(), _CMP_LT_OQ);
    r = _mm512_mask_add_ps(r, neg, r, p);
    const __mmask16 big = _mm512_cmp_ps_mask(r, p, _CMP_GE_OQ);
    return _mm512_mask_sub_ps(r, big, r, p);
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

}  // namespace planar::kernels::avx512
