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

// Lane-parallel F_{p^n} exponentiation shared by the SIMD translation units.
// Include inside an anonymous namespace after defining `Ops`, which provides
// the vector type V, kLanes and the arithmetic used below. Coefficients are
// integers held in binary32; every intermediate stays below 2^24 so each FMA
// is exact.

#include <array>
#include <bit>
#include <utility>

struct FieldConsts {
  typename Ops::V p;
  typename Ops::V inv_p;
  const float* reduction;  // (n - 1) x n, row t is X^(n+t) mod m(X)
};

// x mod p for 0 <= x < 2^24. floor(x / p) from the rounded reciprocal is off
// by at most one, the FMA residual is exact, and fix() folds it into [0, p).
inline typename Ops::V mod_p(const FieldConsts& fc, typename Ops::V x) {
  const auto quot = Ops::floor(Ops::mul(x, fc.inv_p));
  return Ops::fix(Ops::fnmadd(quot, fc.p, x), fc.p);
}

// Lazy skips reducing the raw product before folding the high half; the caller
// guarantees n (p-1)^2 (1 + (n-1)(p-1)) + p < 2^24 in that case.
template <int N, bool Lazy>
inline void fold(const FieldConsts& fc, typename Ops::V* prod,
                 typename Ops::V* out) {
  if constexpr (!Lazy) {
    for (int s = 0; s < 2 * N - 1; ++s) prod[s] = mod_p(fc, prod[s]);
  }
  for (int j = 0; j < N; ++j) {
    auto acc = prod[j];
    for (int t = 0; t + 1 < N; ++t) {
      acc = Ops::fmadd(prod[N + t], Ops::set1(fc.reduction[t * N + j]), acc);
    }
    out[j] = mod_p(fc, acc);
  }
}

template <int N, bool Lazy>
inline void mul_mod(const FieldConsts& fc, const typename Ops::V* a,
                    const typename Ops::V* b, typename Ops::V* out) {
  typename Ops::V prod[2 * N - 1];
  for (auto& v : prod) v = Ops::zero();
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) prod[i + j] = Ops::fmadd(a[i], b[j], prod[i + j]);
  }
  fold<N, Lazy>(fc, prod, out);
}

template <int N, bool Lazy>
inline void sqr_mod(const FieldConsts& fc, typename Ops::V* a) {
  typename Ops::V prod[2 * N - 1];
  for (auto& v : prod) v = Ops::zero();
  for (int i = 0; i < N; ++i) {
    prod[2 * i] = Ops::fmadd(a[i], a[i], prod[2 * i]);
    const auto twice = Ops::add(a[i], a[i]);
    for (int j = i + 1; j < N; ++j) {
      prod[i + j] = Ops::fmadd(twice, a[j], prod[i + j]);
    }
  }
  fold<N, Lazy>(fc, prod, a);
}

// acc[s] = base[s]^k for S independent lane groups sharing one exponent.
template <int N, int S, bool Lazy>
inline void pow_streams(const FieldConsts& fc, std::uint64_t k,
                        const typename Ops::V (&base)[S][N],
                        typename Ops::V (&acc)[S][N]) {
  if (k == 0) {
    for (int s = 0; s < S; ++s) {
      acc[s][0] = Ops::set1(1.0f);
      for (int i = 1; i < N; ++i) acc[s][i] = Ops::zero();
    }
    return;
  }
  for (int s = 0; s < S; ++s) {
    for (int i = 0; i < N; ++i) acc[s][i] = base[s][i];
  }
  for (int bit = std::bit_width(k) - 2; bit >= 0; --bit) {
    for (int s = 0; s < S; ++s) sqr_mod<N, Lazy>(fc, acc[s]);
    if ((k >> bit) & 1) {
      for (int s = 0; s < S; ++s) mul_mod<N, Lazy>(fc, acc[s], base[s], acc[s]);
    }
  }
}

template <int N>
struct Block {
  alignas(64) float digits[N][Ops::kLanes];

  void load(const planar::KernelField& f, const planar::Code* in,
            std::size_t count) {
    float tmp[N];
    for (std::size_t lane = 0; lane < Ops::kLanes; ++lane) {
      if (lane < count) {
        planar::kernels::decode_digits(f, in[lane], tmp);
      } else {
        for (auto& d : tmp) d = 0.0f;
      }
      for (int i = 0; i < N; ++i) digits[i][lane] = tmp[i];
    }
  }

  void store(const planar::KernelField& f, planar::Code* out,
             std::size_t count) const {
    for (std::size_t lane = 0; lane < count; ++lane) {
      planar::Code code = 0;
      for (int i = 0; i < N; ++i) {
        code += static_cast<planar::Code>(digits[i][lane]) * f.weight[i];
      }
      out[lane] = code;
    }
  }
};

template <int N>
std::array<float, (N - 1) * N + 1> reduction_table(
    const planar::KernelField& f) {
  std::array<float, (N - 1) * N + 1> red{};
  for (int i = 0; i < (N - 1) * N; ++i) {
    red[i] = static_cast<float>(f.reduction[i]);
  }
  return red;
}

template <int N, bool Lazy>
void power_n(const planar::KernelField& f, std::uint64_t k,
             const planar::Code* in, planar::Code* out, std::size_t count) {
  const auto red = reduction_table<N>(f);
  const FieldConsts fc{Ops::set1(static_cast<float>(f.p)),
                       Ops::set1(1.0f / static_cast<float>(f.p)), red.data()};
  Block<N> block;
  for (std::size_t at = 0; at < count; at += Ops::kLanes) {
    const std::size_t len = std::min<std::size_t>(Ops::kLanes, count - at);
    block.load(f, in + at, len);
    typename Ops::V base[1][N];
    typename Ops::V acc[1][N];
    for (int i = 0; i < N; ++i) base[0][i] = Ops::load(block.digits[i]);
    pow_streams<N, 1, Lazy>(fc, k, base, acc);
    for (int i = 0; i < N; ++i) Ops::store(block.digits[i], acc[0][i]);
    block.store(f, out + at, len);
  }
}

template <int N, bool Lazy>
void delta_n(const planar::KernelField& f, std::uint64_t k,
             const planar::Code* in, planar::Code* out, std::size_t count) {
  const auto red = reduction_table<N>(f);
  const FieldConsts fc{Ops::set1(static_cast<float>(f.p)),
                       Ops::set1(1.0f / static_cast<float>(f.p)), red.data()};
  Block<N> block;
  for (std::size_t at = 0; at < count; at += Ops::kLanes) {
    const std::size_t len = std::min<std::size_t>(Ops::kLanes, count - at);
    block.load(f, in + at, len);
    typename Ops::V base[2][N];
    typename Ops::V acc[2][N];
    for (int i = 0; i < N; ++i) {
      base[0][i] = Ops::load(block.digits[i]);
      base[1][i] = base[0][i];
    }
    base[1][0] = Ops::fix(Ops::add(base[0][0], Ops::set1(1.0f)), fc.p);
    pow_streams<N, 2, Lazy>(fc, k, base, acc);
    for (int i = 0; i < N; ++i) {
      Ops::store(block.digits[i], Ops::fix(Ops::sub(acc[1][i], acc[0][i]), fc.p));
    }
    block.store(f, out + at, len);
  }
}

template <bool Lazy, std::size_t... Ns>
constexpr std::array<planar::BatchFn, sizeof...(Ns)> make_power_table(
    std::index_sequence<Ns...>) {
  return {{(Ns == 0 ? nullptr
                    : &power_n<static_cast<int>(Ns == 0 ? 1 : Ns), Lazy>)...}};
}

template <bool Lazy, std::size_t... Ns>
constexpr std::array<planar::BatchFn, sizeof...(Ns)> make_delta_table(
    std::index_sequence<Ns...>) {
  return {{(Ns == 0 ? nullptr
                    : &delta_n<static_cast<int>(Ns == 0 ? 1 : Ns), Lazy>)...}};
}

using DegreeSeq = std::make_index_sequence<planar::kMaxSimdDegree + 1>;
constexpr auto kPowerTable = make_power_table<false>(DegreeSeq{});
constexpr auto kDeltaTable = make_delta_table<false>(DegreeSeq{});
constexpr auto kPowerTableLazy = make_power_table<true>(DegreeSeq{});
constexpr auto kDeltaTableLazy = make_delta_table<true>(DegreeSeq{});

// Whether the unreduced product can be folded without leaving exact range.
inline bool lazy_fold_ok(const planar::KernelField& f) {
  const double b = static_cast<double>(f.n) * (f.p - 1) * (f.p - 1);
  return b * (1.0 + (f.n - 1) * static_cast<double>(f.p - 1)) + f.p <
         16777216.0;
}

inline planar::BatchFn pick_power(const planar::KernelField& f) {
  return lazy_fold_ok(f) ? kPowerTableLazy[f.n] : kPowerTable[f.n];
}

inline planar::BatchFn pick_delta(const planar::KernelField& f) {
  return lazy_fold_ok(f) ? kDeltaTableLazy[f.n] : kDeltaTable[f.n];
}
