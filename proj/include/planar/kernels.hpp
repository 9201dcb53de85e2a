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

// Batched evaluation of x^k and (x+1)^k - x^k over many field elements.
//
// Every ISA variant runs the same left-to-right square-and-multiply with the
// same exponent in every lane, so lanes never diverge. Variants:
//
//   kReference  element-at-a-time through planar::pow (any field)
//   kScalar     fixed-size integer arrays, lazy reduction mod p
//   kAvx2       8 lanes of exact integer arithmetic in binary32 with FMA
//   kAvx512     16 lanes, same arithmetic
//
// The float variants need every intermediate below 2^24, i.e.
// n * (p - 1)^2 + p < 2^24, and n <= kMaxSimdDegree. All variants produce
// bit-identical codes; tests/kernels_test.cpp holds them to that.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "planar/ff.hpp"

namespace planar {

enum class Isa { kReference, kScalar, kAvx2, kAvx512 };

inline constexpr int kMaxSimdDegree = 24;

std::string_view isa_name(Isa isa);
std::optional<Isa> parse_isa(std::string_view name);

// Compiled in and supported by the running CPU.
bool cpu_supports(Isa isa);
bool kernel_supports_field(Isa isa, const FieldCtx& ctx);

// Fastest ISA usable for ctx. The PLANAR_ISA environment variable caps the
// choice (e.g. PLANAR_ISA=scalar).
Isa select_isa(const FieldCtx& ctx);

struct KernelField {
  std::uint64_t p = 0;
  int n = 0;
  Code q = 0;
  Code weight[kMaxDegree + 1] = {};
  // reduction[t * n + j] is coefficient j of X^(n+t) mod m(X), t in [0, n-2].
  std::uint64_t reduction[(kMaxDegree - 1) * kMaxDegree] = {};
};

using BatchFn = void (*)(const KernelField& f, std::uint64_t k, const Code* in,
                         Code* out, std::size_t count);

// Immutable per-field evaluator, shareable across threads.
class DeltaKernel {
 public:
  explicit DeltaKernel(const FieldCtx& ctx);
  // Throws std::invalid_argument if isa cannot serve ctx on this machine.
  DeltaKernel(const FieldCtx& ctx, Isa isa);

  Isa isa() const { return isa_; }
  const FieldCtx& field() const { return ctx_; }

  // out[i] = xs[i]^k.
  void power(std::uint64_t k, std::span<const Code> xs,
             std::span<Code> out) const;
  // out[i] = (xs[i] + 1)^k - xs[i]^k.
  void delta(std::uint64_t k, std::span<const Code> xs,
             std::span<Code> out) const;

 private:
  FieldCtx ctx_;
  Isa isa_;
  KernelField tables_;
  BatchFn power_fn_ = nullptr;
  BatchFn delta_fn_ = nullptr;
};

}  // namespace planar
