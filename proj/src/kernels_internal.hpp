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

#include "planar/kernels.hpp"

namespace planar::kernels {

namespace scalar {
void power_batch(const KernelField& f, std::uint64_t k, const Code* in,
                 Code* out, std::size_t count);
void delta_batch(const KernelField& f, std::uint64_t k, const Code* in,
                 Code* out, std::size_t count);
}  // namespace scalar

#if defined(PLANAR_HAVE_X86_SIMD)
namespace avx2 {
void power_batch(const KernelField& f, std::uint64_t k, const Code* in,
                 Code* out, std::size_t count);
void delta_batch(const KernelField& f, std::uint64_t k, const Code* in,
                 Code* out, std::size_t count);
}  // namespace avx2

namespace avx512 {
void power_batch(const KernelField& f, std::uint64_t k, const Code* in,
                 Code* out, std::size_t count);
void delta_batch(const KernelField& f, std::uint64_t k, const Code* in,
                 Code* out, std::size_t count);
}  // namespace avx512
#endif

// Splits a code into n base-p digits. Uses 32-bit division when it can.
template <typename Digit>
inline void decode_digits(const KernelField& f, Code code, Digit* digits) {
  if (f.q <= 0xffffffffULL) {
    auto c = static_cast<std::uint32_t>(code);
    const auto p = static_cast<std::uint32_t>(f.p);
    for (int i = 0; i < f.n; ++i) {
      digits[i] = static_cast<Digit>(c % p);
      c /= p;
    }
  } else {
    for (int i = 0; i < f.n; ++i) {
      digits[i] = static_cast<Digit>(code % f.p);
      code /= f.p;
    }
  }
}

}  // namespace planar::kernels
