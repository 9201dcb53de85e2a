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

#include "planar/detect.hpp"

#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace planar {
namespace {

using u64 = std::uint64_t;

constexpr std::size_t kDrawBatch = 32;
constexpr std::size_t kScanChunk = 4096;

constexpr std::array<std::pair<Outcome, std::string_view>, 7> kOutcomeNames{{
    {Outcome::kFilteredGcd, "FilteredGcd"},
    {Outcome::kFilteredSubfield, "FilteredSubfield"},
    {Outcome::kNonCanonical, "NonCanonical"},
    {Outcome::kProvablyNotPlanarBound, "ProvablyNotPlanarBound"},
    {Outcome::kCollisionNotPlanar, "CollisionNotPlanar"},
    {Outcome::kVerifiedNotPlanar, "VerifiedNotPlanar"},
    {Outcome::kVerifiedPlanar, "VerifiedPlanar"},
}};

class Bitset {
 public:
  explicit Bitset(u64 bits) : words_((bits + 63) / 64, 0) {}
  // Sets the bit and reports whether it was already set.
  bool test_and_set(u64 i) {
    u64& w = words_[i >> 6];
    const u64 mask = u64{1} << (i & 63);
    const bool was = (w & mask) != 0;
    w |= mask;
    return was;
  }
  void clear() { std::fill(words_.begin(), words_.end(), 0); }

 private:
  std::vector<u64> words_;
};

// First x < limit (in code order) with Delta_k(x) == image.
Code first_preimage(const DeltaKernel& kernel, u64 k, Code image, Code limit) {
  std::vector<Code> xs(kScanChunk);
  std::vector<Code> ys(kScanChunk);
  for (Code base = 0; base < limit; base += kScanChunk) {
    const std::size_t len = std::min<Code>(kScanChunk, limit - base);
    for (std::size_t i = 0; i < len; ++i) xs[i] = base + i;
    kernel.delta(k, std::span(xs).first(len), ys);
    for (std::size_t i = 0; i < len; ++i) {
      if (ys[i] == image) return base + i;
    }
  }
  throw std::logic_error("repeated image has no earlier preimage");
}

}  // namespace

std::string_view outcome_name(Outcome outcome) {
  for (const auto& [o, name] : kOutcomeNames) {
    if (o == outcome) return name;
  }
  return "Unknown";
}

std::optional<Outcome> parse_outcome(std::string_view name) {
  for (const auto& [o, n] : kOutcomeNames) {
    if (n == name) return o;
  }
  return std::nullopt;
}

u64 default_N(Code q, double multiplier) {
  if (!(multiplier > 0.0)) {
    throw std::invalid_argument("N multiplier must be positive");
  }
  const long double n =
      std::ceil(static_cast<long double>(multiplier) *
                std::sqrt(static_cast<long double>(q)));
  return static_cast<u64>(n);
}

double false_positive_bound(u64 N, Code q) {
  const long double nn = static_cast<long double>(N);
  return static_cast<double>(std::exp(-nn * (nn - 1) / q));
}

CollisionResult collision_search(const DeltaKernel& kernel, u64 k, u64 N,
                                 RngState& rng) {
  const Code q = kernel.field().q();
  absl::flat_hash_set<Code> sampled;
  absl::flat_hash_map<Code, Code> images;  // image -> preimage
  const std::size_t hint = static_cast<std::size_t>(std::min<u64>(N, 1 << 14));
  sampled.reserve(hint);
  images.reserve(hint);

  std::array<Code, kDrawBatch> xs{};
  std::array<Code, kDrawBatch> ys{};
  u64 iter = 0;
  while (iter < N) {
    const std::size_t len = std::min<u64>(kDrawBatch, N - iter);
    for (std::size_t i = 0; i < len; ++i) xs[i] = random_code(q, rng);
    kernel.delta(k, std::span(xs).first(len), ys);
    for (std::size_t i = 0; i < len; ++i) {
      ++iter;
      if (!sampled.insert(xs[i]).second) continue;
      const auto [it, inserted] = images.try_emplace(ys[i], xs[i]);
      if (!inserted) {
        return CollisionResult{false, iter, Witness{it->second, xs[i]}};
      }
    }
  }
  return CollisionResult{true, iter, std::nullopt};
}

VerifyResult exhaustive_verify(const DeltaKernel& kernel, u64 k) {
  const Code q = kernel.field().q();
  Bitset seen(q);
  std::vector<Code> xs(kScanChunk);
  std::vector<Code> ys(kScanChunk);
  for (Code base = 0; base < q; base += kScanChunk) {
    const std::size_t len = std::min<Code>(kScanChunk, q - base);
    for (std::size_t i = 0; i < len; ++i) xs[i] = base + i;
    kernel.delta(k, std::span(xs).first(len), ys);
    for (std::size_t i = 0; i < len; ++i) {
      if (seen.test_and_set(ys[i])) {
        const Code x2 = base + i;
        const Code x1 = first_preimage(kernel, k, ys[i], x2);
        return VerifyResult{false, Witness{x1, x2}};
      }
    }
  }
  return VerifyResult{true, std::nullopt};
}

bool oracle_full_planarity(const FieldCtx& ctx, u64 k, Code oracle_bound) {
  const Code q = ctx.q();
  if (q > oracle_bound) {
    throw std::invalid_argument("field exceeds the oracle bound");
  }
  const int n = ctx.n();
  const u64 p = ctx.p();
  // digits[x * n + i]: coefficient i of element x.
  std::vector<u64> digits(q * n);
  for (Code x = 0; x < q; ++x) {
    const Elem e = element_from_code(ctx, x);
    std::copy(e.coeffs.begin(), e.coeffs.end(), digits.begin() + x * n);
  }
  std::vector<Code> power(q);
  for (Code x = 0; x < q; ++x) {
    power[x] = code_of(ctx, pow(ctx, element_from_code(ctx, x), k));
  }
  const auto w = ctx.weights();
  Bitset seen(q);
  for (Code a = 1; a < q; ++a) {
    seen.clear();
    const u64* da = &digits[a * n];
    for (Code x = 0; x < q; ++x) {
      const u64* dx = &digits[x * n];
      Code shifted = 0;
      for (int i = 0; i < n; ++i) {
        const u64 s = dx[i] + da[i];
        shifted += (s >= p ? s - p : s) * w[i];
      }
      const u64* hi = &digits[power[shifted] * n];
      const u64* lo = &digits[power[x] * n];
      Code diff = 0;
      for (int i = 0; i < n; ++i) {
        diff += (hi[i] >= lo[i] ? hi[i] - lo[i] : hi[i] + p - lo[i]) * w[i];
      }
      if (seen.test_and_set(diff)) return false;
    }
  }
  return true;
}

bool witness_valid(const FieldCtx& ctx, u64 k, const Witness& w) {
  if (w.x1 == w.x2 || w.x1 >= ctx.q() || w.x2 >= ctx.q()) return false;
  return delta(ctx, k, element_from_code(ctx, w.x1)) ==
         delta(ctx, k, element_from_code(ctx, w.x2));
}

}  // namespace planar
