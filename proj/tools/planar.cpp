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

// planar: classify planar monomials over odd-characteristic finite fields.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "planar/runner.hpp"

int main(int argc, char** argv) {
  using planar::SearchConfig;
  CLI::App app{"Exhaustive classification of planar monomials X^k over F_{p^n}"};
  app.require_subcommand(1);

  std::uint64_t p = 0;
  int n = 0;
  std::uint64_t k = 0;
  SearchConfig config;
  config.workers = std::max(1u, std::thread::hardware_concurrency());
  std::string cache;
  std::string out_path;
  std::optional<std::uint64_t> stop_after;

  auto* classify = app.add_subcommand("classify", "Classify one field");
  classify->add_option("--p", p, "Odd prime characteristic")->required();
  classify->add_option("--n", n, "Extension degree")->required();
  classify->add_option("--seed", config.master_seed, "Master seed");
  classify->add_option("--n-multiplier", config.n_multiplier,
                       "Draws per exponent: ceil(M * sqrt(q))");
  classify->add_option("--workers", config.workers, "Worker threads")
      ->check(CLI::PositiveNumber);
  classify->add_flag("--zieve", config.zieve_filter,
                     "Enable the degree-bound filter");
  classify->add_option("--cache", cache, "Cache directory");
  classify->add_option("--out", out_path, "Verdict log path");
  classify->add_option("--stop-after", stop_after)->group("");

  auto* table = app.add_subcommand("table", "Print the class-count grid");
  table->add_option("--cache", cache, "Cache directory");
  table->add_option("--out", out_path, "CSV path (default <cache>/table.csv)");

  auto* verify = app.add_subcommand("verify", "Exhaustively verify one X^k");
  verify->add_option("--p", p)->required();
  verify->add_option("--n", n)->required();
  verify->add_option("--k", k)->required();

  auto* oracle = app.add_subcommand("oracle", "Definitional classification");
  oracle->add_option("--p", p)->required();
  oracle->add_option("--n", n)->required();
  oracle->add_option("--cache", cache, "Cache directory");
  oracle->add_option("--oracle-bound", config.oracle_bound,
                     "Largest q accepted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? planar::kExitOk : planar::kExitError;
  }

  config.cache_dir = cache;
  config.output = out_path;
  if (*classify) {
    return planar::cmd_classify(p, n, config, {stop_after}, std::cout,
                                std::cerr);
  }
  if (*table) return planar::cmd_table(cache, {}, out_path, std::cout, std::cerr);
  if (*verify) return planar::cmd_verify(p, n, k, std::cout, std::cerr);
  return planar::cmd_oracle(p, n, config, std::cout, std::cerr);
}
