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

// Planarity decisions for a single exponent k.
//
// X^k is planar over F_q iff Delta_k(x) = (x+1)^k - x^k permutes F_q.
// collision_search looks for two inputs with equal Delta_k image by random
// sampling (birthday bound); a Candidate result still needs
// exhaustive_verify, which checks all q images. oracle_full_planarity is the
// definitional check over every shift a != 0 and exists to validate both.

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "planar/ff.hpp"
#include "planar/kernels.hpp"

namespace planar {

inline constexpr double kDefaultNMultiplier = 20.0;
inline constexpr Code kDefaultOracleBound = 2187;  // 3^7

struct Witness {
  Code x1 = 0;
  Code x2 = 0;
  friend bool operator==(const Witness&, const Witness&) = default;
};

enum class Outcome {
  kFilteredGcd,
  kFilteredSubfield,
  kNonCanonical,
  kProvablyNotPlanarBound,
  kCollisionNotPlanar,
  kVerifiedNotPlanar,
  kVerifiedPlanar,
};

std::string_view outcome_name(Outcome outcome);
std::optional<Outcome> parse_outcome(std::string_view name);

struct ExponentVerdict {
  std::uint64_t k = 0;
  Outcome outcome = Outcome::kNonCanonical;
  std::uint64_t draws_used = 0;
  std::optional<Witness> witness;

  friend bool operator==(const ExponentVerdict&,
                         const ExponentVerdict&) = default;
};

struct CollisionResult {
  bool candidate = false;
  std::uint64_t draws = 0;  // loop iterations executed
  std::optional<Witness> witness;
};

// ceil(multiplier * sqrt(q)). Throws std::invalid_argument unless
// multiplier > 0.
std::uint64_t default_N(Code q, double multiplier = kDefaultNMultiplier);

// exp(-N (N - 1) / q): bound on the chance that N draws of a random mapping
// see no collision.
double false_positive_bound(std::uint64_t N, Code q);

// N loop iterations of: draw x uniformly; skip if already drawn; report a
// collision if Delta_k(x) was already seen; else remember x and its image.
// Draws are evaluated in batches through `kernel`, then consumed strictly in
// draw order, so the result does not depend on the batch size or ISA.
CollisionResult collision_search(const DeltaKernel& kernel, std::uint64_t k,
                                 std::uint64_t N, RngState& rng);

struct VerifyResult {
  bool planar = false;
  std::optional<Witness> witness;  // first repeated image and both preimages
};

// Scans every x in code order and marks Delta_k(x) in a q-bit image set.
VerifyResult exhaustive_verify(const DeltaKernel& kernel, std::uint64_t k);

// Definitional check, for every a != 0 that x -> (x+a)^k - x^k is a
// bijection. Uses only planar::pow. Throws std::invalid_argument when
// q > oracle_bound.
bool oracle_full_planarity(const FieldCtx& ctx, std::uint64_t k,
                           Code oracle_bound = kDefaultOracleBound);

// Independent recomputation through planar::delta: x1 != x2 and
// Delta_k(x1) == Delta_k(x2).
bool witness_valid(const FieldCtx& ctx, std::uint64_t k, const Witness& w);

}  // namespace planar
