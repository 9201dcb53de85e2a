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

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_internal.hpp"

namespace planar {
namespace {

using u128 = unsigned __int128;

void reference_power(const FieldCtx& ctx, std::uint64_t k,
                     std::span<const Code> xs, std::span<Code> out) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out[i] = code_of(ctx, pow(ctx, element_from_code(ctx, xs[i]), k));
  }
}

void reference_delta(const FieldCtx& ctx, std::uint64_t k,
                     std::span<const Code> xs, std::span<Code> out) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out[i] = code_of(ctx, delta(ctx, k, element_from_code(ctx, xs[i])));
  }
}

int rank(Isa isa) { return static_cast<int>(isa); }

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kReference: return "reference";
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kAvx512: return "avx512";
  }
  return "unknown";
}

std::optional<Isa> parse_isa(std::string_view name) {
  for (Isa isa : {Isa::kReference, Isa::kScalar, Isa::kAvx2, Isa::kAvx512}) {
    if (isa_name(isa) == name) return isa;
  }
  return std::nullopt;
}

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::kReference:
    case Isa::kScalar:
      return true;
#if defined(PLANAR_HAVE_X86_SIMD)
    case Isa::kAvx2:
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    case Isa::kAvx512:
      return __builtin_cpu_supports("avx512f");
#else
    case Isa::kAvx2:
    case Isa::kAvx512:
      return false;
#endif
  }
  return false;
}

bool kernel_supports_field(Isa isa, const FieldCtx& ctx) {
  const u128 p1 = ctx.p() - 1;
  const u128 worst = static_cast<u128>(ctx.n()) * p1 * p1 + ctx.p();
  switch (isa) {
    case Isa::kReference:
      return true;
    case Isa::kScalar:
      return worst < (u128{1} << 64);
    case Isa::kAvx2:
    case Isa::kAvx512:
      return ctx.n() <= kMaxSimdDegree && worst < (u128{1} << 24);
  }
  return false;
}

Isa select_isa(const FieldCtx& ctx) {
  Isa cap = Isa::kAvx512;
  if (const char* env = std::getenv("PLANAR_ISA")) {
    if (auto parsed = parse_isa(env)) cap = *parsed;
  }
  for (Isa isa : {Isa::kAvx512, Isa::kAvx2, Isa::kScalar}) {
    if (rank(isa) <= rank(cap) && cpu_supports(isa) &&
        kernel_supports_field(isa, ctx)) {
      return isa;
    }
  }
  return Isa::kReference;
}

DeltaKernel::DeltaKernel(const FieldCtx& ctx)
    : DeltaKernel(ctx, select_isa(ctx)) {}

DeltaKernel::DeltaKernel(const FieldCtx& ctx, Isa isa) : ctx_(ctx), isa_(isa) {
  if (!cpu_supports(isa) || !kernel_supports_field(isa, ctx)) {
    throw std::invalid_argument("kernel " + std::string(isa_name(isa)) +
                                " unavailable for this field or CPU");
  }
  tables_.p = ctx.p();
  tables_.n = ctx.n();
  tables_.q = ctx.q();
  for (int i = 0; i <= ctx.n(); ++i) tables_.weight[i] = ctx.weights()[i];
  if (ctx.n() >= 2) {
    const Elem x = element_from_code(ctx, ctx.p());
    Elem power = pow(ctx, x, ctx.n());
    for (int t = 0; t + 1 < ctx.n(); ++t) {
      for (int j = 0; j < ctx.n(); ++j) {
        tables_.reduction[t * ctx.n() + j] = power.coeffs[j];
      }
      power = mul(ctx, power, x);
    }
  }
  switch (isa) {
    case Isa::kReference:
      break;
    case Isa::kScalar:
      power_fn_ = &kernels::scalar::power_batch;
      delta_fn_ = &kernels::scalar::delta_batch;
      break;
#if defined(PLANAR_HAVE_X86_SIMD)
    case Isa::kAvx2:
      power_fn_ = &kernels::avx2::power_batch;
      delta_fn_ = &kernels::avx2::delta_batch;
      break;
    case Isa::kAvx512:
      power_fn_ = &kernels::avx512::power_batch;
      delta_fn_ = &kernels::avx512::delta_batch;
      break;
#else
    default:
      break;
#endif
  }
}

void DeltaKernel::power(std::uint64_t k, std::span<const Code> xs,
                        std::span<Code> out) const {
  if (out.size() < xs.size()) throw std::invalid_argument("output too small");
  if (power_fn_ == nullptr) return reference_power(ctx_, k, xs, out);
  power_fn_(tables_, k, xs.data(), out.data(), xs.size());
}

void DeltaKernel::delta(std::uint64_t k, std::span<const Code> xs,
                        std::span<Code> out) const {
  if (out.size() < xs.size()) throw std::invalid_argument("output too small");
  if (delta_fn_ == nullptr) return reference_delta(ctx_, k, xs, out);
  delta_fn_(tables_, k, xs.data(), out.data(), xs.size());
}

}  // namespace planar
