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

// Every ISA variant must agree bit for bit with the reference path.

#include <gtest/gtest.h>

#include <cstdlib>
#include <vector>

#include "planar/kernels.hpp"

namespace planar {
namespace {

using u64 = std::uint64_t;

constexpr Isa kAll[] = {Isa::kReference, Isa::kScalar, Isa::kAvx2,
                        Isa::kAvx512};

struct FieldParam {
  u64 p;
  int n;
  friend void PrintTo(const FieldParam& f, std::ostream* os) {
    *os << "F_" << f.p << "^" << f.n;
  }
};

std::vector<Code> sample_codes(Code q, std::size_t count, u64 seed) {
  RngState rng(seed);
  std::vector<Code> xs = {0, q - 1, 1 % q};
  if (q > 3) xs.push_back(q - 2);
  while (xs.size() < count) xs.push_back(random_code(q, rng));
  return xs;
}

std::vector<u64> sample_exponents(Code q, u64 seed) {
  RngState rng(seed);
  std::vector<u64> ks = {0, 1, 2, 3, q - 2, q - 1, q, 2 * q + 1};
  for (int i = 0; i < 12; ++i) ks.push_back(rng.next() % (q - 1) + 2);
  ks.push_back(rng.next());
  return ks;
}

class KernelEquivalence : public testing::TestWithParam<FieldParam> {};

TEST_P(KernelEquivalence, AllIsasMatchReference) {
  const FieldCtx f = make_field(GetParam().p, GetParam().n);
  const DeltaKernel ref(f, Isa::kReference);
  // Odd length exercises partial SIMD blocks.
  const auto xs = sample_codes(f.q(), 203, f.q());
  std::vector<Code> want(xs.size()), got(xs.size());
  int compared = 0;
  for (Isa isa : kAll) {
    if (!cpu_supports(isa) || !kernel_supports_field(isa, f)) continue;
    const DeltaKernel kernel(f, isa);
    ASSERT_EQ(kernel.isa(), isa);
    for (u64 k : sample_exponents(f.q(), f.q() + 1)) {
      ref.power(k, xs, want);
      kernel.power(k, xs, got);
      ASSERT_EQ(got, want) << isa_name(isa) << " power k=" << k;
      ref.delta(k, xs, want);
      kernel.delta(k, xs, got);
      ASSERT_EQ(got, want) << isa_name(isa) << " delta k=" << k;
    }
    ++compared;
  }
  EXPECT_GE(compared, 2);
}

TEST_P(KernelEquivalence, ReferenceMatchesFieldArithmetic) {
  const FieldCtx f = make_field(GetParam().p, GetParam().n);
  const DeltaKernel kernel(f);
  const auto xs = sample_codes(f.q(), 64, 99);
  std::vector<Code> out(xs.size());
  for (u64 k : sample_exponents(f.q(), 5)) {
    kernel.delta(k, xs, out);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      ASSERT_EQ(out[i],
                code_of(f, delta(f, k, element_from_code(f, xs[i]))));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(
    Fields, KernelEquivalence,
    testing::Values(FieldParam{3, 1}, FieldParam{3, 2}, FieldParam{5, 1},
                    FieldParam{3, 5}, FieldParam{3, 7}, FieldParam{3, 12},
                    FieldParam{5, 8}, FieldParam{7, 7}, FieldParam{13, 6},
                    FieldParam{31, 5}, FieldParam{3, 24}, FieldParam{3, 30},
                    FieldParam{251, 2}, FieldParam{257, 3},
                    FieldParam{1021, 2}, FieldParam{4093, 1}),
    [](const testing::TestParamInfo<FieldParam>& info) {
      return "p" + std::to_string(info.param.p) + "_n" +
             std::to_string(info.param.n);
    });

TEST(Kernels, ExhaustiveAgreementOnSmallField) {
  const FieldCtx f = make_field(3, 5);
  std::vector<Code> xs(f.q());
  for (Code c = 0; c < f.q(); ++c) xs[c] = c;
  const DeltaKernel ref(f, Isa::kReference);
  std::vector<Code> want(xs.size()), got(xs.size());
  for (Isa isa : kAll) {
    if (!cpu_supports(isa)) continue;
    const DeltaKernel kernel(f, isa);
    for (u64 k = 2; k < f.q(); ++k) {
      ref.delta(k, xs, want);
      kernel.delta(k, xs, got);
      ASSERT_EQ(got, want) << isa_name(isa) << " k=" << k;
    }
  }
}

TEST(Kernels, SupportLimits) {
  EXPECT_TRUE(kernel_supports_field(Isa::kScalar, make_field(3, 39)));
  EXPECT_FALSE(kernel_supports_field(Isa::kAvx2, make_field(3, 25)));
  EXPECT_TRUE(kernel_supports_field(Isa::kAvx2, make_field(3, 24)));
  // n (p-1)^2 + p must stay below 2^24.
  EXPECT_FALSE(kernel_supports_field(Isa::kAvx512, make_field(4099, 2)));
  EXPECT_TRUE(cpu_supports(Isa::kReference));
  EXPECT_TRUE(cpu_supports(Isa::kScalar));
}

TEST(Kernels, UnsupportedIsaThrows) {
  EXPECT_THROW(DeltaKernel(make_field(3, 30), Isa::kAvx2),
               std::invalid_argument);
}

TEST(Kernels, IsaNames) {
  for (Isa isa : kAll) EXPECT_EQ(parse_isa(isa_name(isa)), isa);
  EXPECT_FALSE(parse_isa("neon").has_value());
}

TEST(Kernels, EnvironmentCapsSelection) {
  const FieldCtx f = make_field(3, 7);
  ::setenv("PLANAR_ISA", "scalar", 1);
  EXPECT_EQ(select_isa(f), Isa::kScalar);
  ::setenv("PLANAR_ISA", "reference", 1);
  EXPECT_EQ(DeltaKernel(f).isa(), Isa::kReference);
  ::unsetenv("PLANAR_ISA");
  EXPECT_GE(static_cast<int>(select_isa(f)), static_cast<int>(Isa::kScalar));
  EXPECT_EQ(select_isa(make_field(3, 30)), Isa::kScalar);
}

}  // namespace
}  // namespace planar
