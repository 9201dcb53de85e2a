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

#include <cstdint>
#include <filesystem>
#include <stdexcept>

#include "planar/detect.hpp"

namespace planar {

struct SearchConfig {
  std::uint64_t master_seed = 0;
  double n_multiplier = kDefaultNMultiplier;
  unsigned workers = 1;
  Code oracle_bound = kDefaultOracleBound;
  bool zieve_filter = false;
  std::filesystem::path cache_dir;
  std::filesystem::path output;  // verdict log; empty selects a cache path

  void validate() const {
    if (!(n_multiplier > 0.0)) {
      throw std::invalid_argument("N multiplier must be positive");
    }
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  }
};

}  // namespace planar
