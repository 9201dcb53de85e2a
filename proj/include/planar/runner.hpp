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

// Orchestration behind the `planar` CLI: the classification cache, verdict
// logs with resume, and the classify / table / verify / oracle commands.
//
// Cache layout under the cache directory:
//   classifications.jsonl   one FieldClassification JSON object per line
//   logs/p<P>_n<N>.verdicts verdict log of the latest search of a field
//   table.csv               written by `table`

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "planar/catalog.hpp"
#include "planar/config.hpp"

namespace planar {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitPlanarNew = 2;

inline constexpr const char* kCacheDirEnv = "PLANAR_CACHE_DIR";
inline constexpr const char* kDefaultCacheDir = "planar-cache";

// --cache beats PLANAR_CACHE_DIR beats ./planar-cache.
std::filesystem::path resolve_cache_dir(const std::filesystem::path& flag);

std::string record_to_line(const FieldClassification& c);
// Parses and validates one cache line; nullopt (with `error` set) if the
// line is malformed or violates a record invariant.
std::optional<FieldClassification> record_from_line(std::string_view line,
                                                    std::string* error = nullptr);

class ClassificationCache {
 public:
  explicit ClassificationCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path records_path() const;
  std::filesystem::path log_path(std::uint64_t p, int n) const;

  // Rereads the records file. Corrupt lines are skipped and reported in
  // warnings(). Throws std::runtime_error if the directory is unreadable.
  void load();
  const std::vector<std::string>& warnings() const { return warnings_; }

  // Appends atomically (write temp file, rename) under an advisory lock.
  void store(const FieldClassification& record);

  // Latest complete record of a field.
  std::optional<FieldClassification> find(std::uint64_t p, int n) const;
  // Latest complete record of every field, ordered by (n, p).
  std::vector<FieldClassification> complete_records() const;

  SubfieldLookup lookup() const;

 private:
  std::filesystem::path dir_;
  std::map<std::pair<int, std::uint64_t>, FieldClassification> latest_;
  std::vector<std::string> warnings_;
};

std::uint64_t fnv1a64(std::string_view bytes);
std::string digest_hex(std::uint64_t digest);
std::string file_digest(const std::filesystem::path& path);

// Verdict log: a header line, then one tab-separated line per exponent:
//   k  outcome  draws_used  x1  x2   (x1, x2 are "-" without a witness)
std::string verdict_log_header(std::uint64_t p, int n,
                               const SearchConfig& config, Method method);
std::string format_verdict_line(const ExponentVerdict& v);
std::optional<ExponentVerdict> parse_verdict_line(std::string_view line);

// Reads the verdicts of a log whose header equals `header`, truncating the
// file after the last intact line. Returns nullopt when the file is absent
// or its header differs.
std::optional<std::map<std::uint64_t, ExponentVerdict>> read_verdict_log(
    const std::filesystem::path& path, const std::string& header);

struct ClassifyOptions {
  std::optional<std::uint64_t> stop_after;  // simulate an interrupted run
};

struct RunResult {
  FieldClassification record;
  std::filesystem::path log;  // empty when no log was written
  int exit_code = kExitOk;
};

// Classifies F_{p^n} and every proper subfield it depends on, appending
// records to the cache. Degree <= 4 fields are closed form (F_81 is
// verified exhaustively); larger fields are searched, resuming from an
// existing compatible verdict log.
RunResult run_classification(std::uint64_t p, int n, const SearchConfig& config,
                             const ClassifyOptions& options, std::ostream& log);

int cmd_classify(std::uint64_t p, int n, const SearchConfig& config,
                 const ClassifyOptions& options, std::ostream& out,
                 std::ostream& err);
int cmd_table(const std::filesystem::path& cache_dir,
              const std::vector<std::pair<int, std::uint64_t>>& fields,
              const std::filesystem::path& csv_path, std::ostream& out,
              std::ostream& err);
int cmd_verify(std::uint64_t p, int n, std::uint64_t k, std::ostream& out,
               std::ostream& err);
int cmd_oracle(std::uint64_t p, int n, const SearchConfig& config,
               std::ostream& out, std::ostream& err);

// Grid with rows n and columns p plus CSV lines "n,p,classes,matches_paper".
struct TableOutput {
  std::string grid;
  std::string csv;
  std::size_t mismatches = 0;
};
TableOutput render_table(const std::vector<FieldClassification>& records);

}  // namespace planar
