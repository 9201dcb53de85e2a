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

#include "planar/runner.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "planar/kernels.hpp"

namespace planar {
namespace {

namespace fs = std::filesystem;
using u64 = std::uint64_t;
using Json = nlohmann::ordered_json;

class FileLock {
 public:
  explicit FileLock(const fs::path& path)
      : fd_(::open(path.c_str(), O_RDWR | O_CREAT, 0644)) {
    if (fd_ < 0) throw std::runtime_error("cannot open lock " + path.string());
    ::flock(fd_, LOCK_EX);
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <typename T>
std::optional<T> parse_number(std::string_view text) {
  T value{};
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

std::string field_name(u64 p, int n) {
  return "F_" + std::to_string(p) + "^" + std::to_string(n);
}

std::string join(const std::vector<u64>& values) {
  std::string out;
  for (u64 v : values) {
    if (!out.empty()) out += ' ';
    out += std::to_string(v);
  }
  return out;
}

std::string validate_record(const FieldClassification& c) {
  if (c.p == 2 || !is_prime(c.p)) return "characteristic is not an odd prime";
  if (c.n < 1 || c.n > kMaxDegree) return "degree out of range";
  if (checked_field_order(c.p, c.n) != c.q || c.q == 0) return "q != p^n";
  if (c.class_count != c.planar_canonical.size()) {
    return "class_count != |planar_canonical|";
  }
  u64 prev = 0;
  for (u64 k : c.planar_canonical) {
    if (k <= prev) return "planar_canonical not strictly increasing";
    if (k < 2 || k > max_exponent(c.q)) return "exponent out of range";
    if (!is_canonical(k, c.p, c.n)) return "exponent not canonical";
    if (!gcd_filter(k, c.q)) return "exponent fails gcd condition";
    prev = k;
  }
  if (!(c.n_multiplier > 0.0)) return "N multiplier not positive";
  return {};
}

void print_record(const FieldClassification& c, std::ostream& out) {
  out << field_name(c.p, c.n) << " (q = " << c.q << ")"
      << "  method " << method_name(c.method)
      << (c.complete ? "" : "  [incomplete]") << "\n";
  out << "classes: " << c.class_count << "\n";
  out << "planar canonical exponents: " << join(c.planar_canonical) << "\n";
  const Comparison cmp = compare_against_reference(c);
  if (cmp.kind == Comparison::Kind::kMatch) {
    out << "reference count: " << cmp.expected << " (match)\n";
  } else if (cmp.kind == Comparison::Kind::kMismatch) {
    out << "reference count: " << cmp.expected << " (MISMATCH, got "
        << cmp.got << ")\n";
  }
}

int report_new_planar(const FieldClassification& c, std::ostream& out) {
  const auto extra = unexpected_planar(c);
  for (u64 k : extra) {
    out << "PLANAR-NEW " << field_name(c.p, c.n) << " k=" << k << "\n";
  }
  return extra.empty() ? kExitOk : kExitPlanarNew;
}

}  // namespace

fs::path resolve_cache_dir(const fs::path& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kCacheDirEnv); env != nullptr && *env) {
    return env;
  }
  return kDefaultCacheDir;
}

std::string record_to_line(const FieldClassification& c) {
  Json j;
  j["p"] = c.p;
  j["n"] = c.n;
  j["q"] = c.q;
  j["planar_canonical"] = c.planar_canonical;
  j["class_count"] = c.class_count;
  j["complete"] = c.complete;
  j["method"] = std::string(method_name(c.method));
  j["master_seed"] = c.master_seed;
  j["n_multiplier"] = c.n_multiplier;
  j["zieve_filter"] = c.zieve_filter;
  j["timestamp"] = c.timestamp;
  j["log_digest"] = c.log_digest;
  Json s;
  s["exponents"] = c.stats.exponents;
  s["non_canonical"] = c.stats.non_canonical;
  s["filtered_gcd"] = c.stats.filtered_gcd;
  s["filtered_subfield"] = c.stats.filtered_subfield;
  s["filtered_bound"] = c.stats.filtered_bound;
  s["searched"] = c.stats.searched;
  s["collisions"] = c.stats.collisions;
  s["candidates"] = c.stats.candidates;
  s["verified_not_planar"] = c.stats.verified_not_planar;
  s["verified_planar"] = c.stats.verified_planar;
  j["stats"] = std::move(s);
  return j.dump();
}

std::optional<FieldClassification> record_from_line(std::string_view line,
                                                    std::string* error) {
  auto fail = [&](const std::string& why) -> std::optional<FieldClassification> {
    if (error) *error = why;
    return std::nullopt;
  };
  FieldClassification c;
  try {
    const Json j = Json::parse(line);
    c.p = j.at("p").get<u64>();
    c.n = j.at("n").get<int>();
    c.q = j.at("q").get<u64>();
    c.planar_canonical = j.at("planar_canonical").get<std::vector<u64>>();
    c.class_count = j.at("class_count").get<u64>();
    c.complete = j.at("complete").get<bool>();
    const auto method = parse_method(j.at("method").get<std::string>());
    if (!method) return fail("unknown method");
    c.method = *method;
    c.master_seed = j.at("master_seed").get<u64>();
    c.n_multiplier = j.at("n_multiplier").get<double>();
    c.zieve_filter = j.at("zieve_filter").get<bool>();
    c.timestamp = j.at("timestamp").get<std::string>();
    c.log_digest = j.at("log_digest").get<std::string>();
    const Json& s = j.at("stats");
    c.stats.exponents = s.at("exponents").get<u64>();
    c.stats.non_canonical = s.at("non_canonical").get<u64>();
    c.stats.filtered_gcd = s.at("filtered_gcd").get<u64>();
    c.stats.filtered_subfield = s.at("filtered_subfield").get<u64>();
    c.stats.filtered_bound = s.at("filtered_bound").get<u64>();
    c.stats.searched = s.at("searched").get<u64>();
    c.stats.collisions = s.at("collisions").get<u64>();
    c.stats.candidates = s.at("candidates").get<u64>();
    c.stats.verified_not_planar = s.at("verified_not_planar").get<u64>();
    c.stats.verified_planar = s.at("verified_planar").get<u64>();
  } catch (const std::exception& e) {
    return fail(e.what());
  }
  if (auto why = validate_record(c); !why.empty()) return fail(why);
  return c;
}

ClassificationCache::ClassificationCache(fs::path dir) : dir_(std::move(dir)) {}

fs::path ClassificationCache::records_path() const {
  return dir_ / "classifications.jsonl";
}

fs::path ClassificationCache::log_path(u64 p, int n) const {
  return dir_ / "logs" /
         ("p" + std::to_string(p) + "_n" + std::to_string(n) + ".verdicts");
}

void ClassificationCache::load() {
  latest_.clear();
  warnings_.clear();
  std::error_code ec;
  if (fs::exists(dir_, ec) && !fs::is_directory(dir_, ec)) {
    throw std::runtime_error("cache path is not a directory: " + dir_.string());
  }
  const fs::path path = records_path();
  if (!fs::exists(path, ec)) return;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::string why;
    auto record = record_from_line(line, &why);
    if (!record) {
      warnings_.push_back(path.string() + ":" + std::to_string(lineno) +
                          ": skipped corrupt record (" + why + ")");
      continue;
    }
    if (!record->complete) continue;
    latest_[{record->n, record->p}] = std::move(*record);
  }
}

void ClassificationCache::store(const FieldClassification& record) {
  fs::create_directories(dir_);
  FileLock lock(dir_ / ".lock");
  const fs::path path = records_path();
  std::string content = read_file(path);
  if (!content.empty() && content.back() != '\n') {
    // Drop a torn final line left by a crashed writer.
    content.resize(content.rfind('\n') == std::string::npos
                       ? 0
                       : content.rfind('\n') + 1);
  }
  content += record_to_line(record);
  content += '\n';
  const fs::path tmp =
      dir_ / ("classifications.jsonl.tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
  if (record.complete) latest_[{record.n, record.p}] = record;
}

std::optional<FieldClassification> ClassificationCache::find(u64 p,
                                                             int n) const {
  if (auto it = latest_.find({n, p}); it != latest_.end()) return it->second;
  return std::nullopt;
}

std::vector<FieldClassification> ClassificationCache::complete_records() const {
  std::vector<FieldClassification> out;
  for (const auto& [key, record] : latest_) out.push_back(record);
  return out;
}

SubfieldLookup ClassificationCache::lookup() const {
  return [this](u64 p, int d) -> std::optional<std::vector<u64>> {
    if (auto record = find(p, d)) return record->planar_canonical;
    return std::nullopt;
  };
}

u64 fnv1a64(std::string_view bytes) {
  u64 h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string digest_hex(u64 digest) {
  std::ostringstream ss;
  ss << std::hex << std::setw(16) << std::setfill('0') << digest;
  return ss.str();
}

std::string file_digest(const fs::path& path) {
  return digest_hex(fnv1a64(read_file(path)));
}

std::string verdict_log_header(u64 p, int n, const SearchConfig& config,
                               Method method) {
  std::ostringstream ss;
  ss << "# planar-verdicts v1 p=" << p << " n=" << n
     << " method=" << method_name(method) << " seed=" << config.master_seed
     << " n_multiplier=" << config.n_multiplier
     << " zieve=" << (config.zieve_filter ? 1 : 0);
  return ss.str();
}

std::string format_verdict_line(const ExponentVerdict& v) {
  std::string line = std::to_string(v.k);
  line += '\t';
  line += outcome_name(v.outcome);
  line += '\t';
  line += std::to_string(v.draws_used);
  line += '\t';
  line += v.witness ? std::to_string(v.witness->x1) : "-";
  line += '\t';
  line += v.witness ? std::to_string(v.witness->x2) : "-";
  return line;
}

std::optional<ExponentVerdict> parse_verdict_line(std::string_view line) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    parts.push_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  if (parts.size() != 5) return std::nullopt;
  ExponentVerdict v;
  const auto k = parse_number<u64>(parts[0]);
  const auto outcome = parse_outcome(parts[1]);
  const auto draws = parse_number<u64>(parts[2]);
  if (!k || !outcome || !draws) return std::nullopt;
  v.k = *k;
  v.outcome = *outcome;
  v.draws_used = *draws;
  if (parts[3] != "-" || parts[4] != "-") {
    const auto x1 = parse_number<u64>(parts[3]);
    const auto x2 = parse_number<u64>(parts[4]);
    if (!x1 || !x2) return std::nullopt;
    v.witness = Witness{*x1, *x2};
  }
  const bool needs_witness = v.outcome == Outcome::kCollisionNotPlanar ||
                             v.outcome == Outcome::kVerifiedNotPlanar;
  if (needs_witness != v.witness.has_value()) return std::nullopt;
  return v;
}

std::optional<std::map<u64, ExponentVerdict>> read_verdict_log(
    const fs::path& path, const std::string& header) {
  std::error_code ec;
  if (!fs::exists(path, ec)) return std::nullopt;
  const std::string content = read_file(path);
  std::size_t pos = content.find('\n');
  if (pos == std::string::npos || content.substr(0, pos) != header) {
    return std::nullopt;
  }
  std::map<u64, ExponentVerdict> verdicts;
  std::size_t good_end = pos + 1;
  u64 last_k = 0;
  while (good_end < content.size()) {
    const std::size_t eol = content.find('\n', good_end);
    if (eol == std::string::npos) break;  // torn final line
    auto v = parse_verdict_line(
        std::string_view(content).substr(good_end, eol - good_end));
    if (!v || v->k <= last_k) break;
    last_k = v->k;
    verdicts.emplace(v->k, *v);
    good_end = eol + 1;
  }
  if (good_end != content.size()) fs::resize_file(path, good_end);
  return verdicts;
}

RunResult run_classification(u64 p, int n, const SearchConfig& config,
                             const ClassifyOptions& options, std::ostream& log) {
  config.validate();
  const FieldCtx ctx = make_field(p, n);
  ClassificationCache cache(resolve_cache_dir(config.cache_dir));
  cache.load();
  for (const auto& w : cache.warnings()) log << "warning: " << w << "\n";

  // Proper subfields first, ascending, so every cached rule is available.
  for (int d = 1; d < n; ++d) {
    if (n % d != 0 || cache.find(p, d)) continue;
    SearchConfig sub = config;
    sub.output.clear();
    RunResult prerequisite = run_classification(p, d, sub, {}, log);
    if (!prerequisite.record.complete) {
      throw std::runtime_error("prerequisite " + field_name(p, d) +
                               " did not complete");
    }
    cache.load();
  }

  RunResult result;
  if (has_small_subfield_rule(p, n)) {
    result.record = analytic_classification(p, n);
    cache.store(result.record);
    log << "classified " << field_name(p, n) << " in closed form: "
        << result.record.class_count << " classes\n";
    return result;
  }

  const Method method = n <= 4 ? Method::kExhaustive : Method::kSearch;
  const fs::path path =
      config.output.empty() ? cache.log_path(p, n) : config.output;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const std::string header = verdict_log_header(p, n, config, method);
  auto resumed = read_verdict_log(path, header);

  std::ofstream out;
  if (resumed) {
    out.open(path, std::ios::binary | std::ios::app);
    if (!resumed->empty()) {
      log << "resuming " << field_name(p, n) << " from " << resumed->size()
          << " logged verdicts\n";
    }
  } else {
    out.open(path, std::ios::binary | std::ios::trunc);
    out << header << '\n';
  }
  if (!out) throw std::runtime_error("cannot write " + path.string());

  ClassifyHooks hooks;
  if (resumed) hooks.resume = &*resumed;
  hooks.stop_after = options.stop_after;
  hooks.on_verdicts = [&](std::span<const ExponentVerdict> verdicts) {
    for (const auto& v : verdicts) {
      if (resumed && resumed->contains(v.k)) continue;
      out << format_verdict_line(v) << '\n';
    }
    out.flush();
  };

  result.record =
      classify_field(p, n, config, method, cache.lookup(), hooks);
  out.close();
  result.log = path;
  result.record.log_digest = file_digest(path);
  cache.store(result.record);
  result.exit_code = unexpected_planar(result.record).empty() ? kExitOk
                                                              : kExitPlanarNew;
  log << "classified " << field_name(p, n) << " by " << method_name(method)
      << ": " << result.record.class_count << " classes"
      << (result.record.complete ? "" : " (stopped early)") << "\n";
  return result;
}

int cmd_classify(u64 p, int n, const SearchConfig& config,
                 const ClassifyOptions& options, std::ostream& out,
                 std::ostream& err) {
  try {
    const RunResult run = run_classification(p, n, config, options, err);
    const Code q = run.record.q;
    if (run.record.method == Method::kSearch) {
      const u64 N = default_N(q, config.n_multiplier);
      out << "N = " << N << " draws per exponent, no-collision bound "
          << false_positive_bound(N, q) << "\n";
    }
    print_record(run.record, out);
    if (!run.log.empty()) {
      out << "verdict log: " << run.log.string() << " (digest "
          << run.record.log_digest << ")\n";
    }
    return report_new_planar(run.record, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

TableOutput render_table(const std::vector<FieldClassification>& records) {
  std::set<int> rows;
  std::set<u64> cols;
  std::map<std::pair<int, u64>, const FieldClassification*> cells;
  for (const auto& r : records) {
    rows.insert(r.n);
    cols.insert(r.p);
    cells[{r.n, r.p}] = &r;
  }
  TableOutput t;
  std::ostringstream csv;
  csv << "n,p,classes,matches_paper\n";
  std::map<std::pair<int, u64>, std::string> text;
  std::size_t width = 3;
  for (const auto& [key, r] : cells) {
    const Comparison cmp = compare_against_reference(*r);
    std::string cell = std::to_string(r->class_count);
    std::string match = "n/a";
    if (cmp.kind == Comparison::Kind::kMatch) match = "yes";
    if (cmp.kind == Comparison::Kind::kMismatch) {
      match = "no";
      cell += " MISMATCH";
      ++t.mismatches;
    }
    width = std::max(width, cell.size());
    text[key] = cell;
    csv << key.first << ',' << key.second << ',' << r->class_count << ','
        << match << '\n';
  }
  std::ostringstream grid;
  grid << std::setw(5) << "(n,p)";
  for (u64 p : cols) grid << ' ' << std::setw(static_cast<int>(width)) << p;
  grid << '\n';
  for (int n : rows) {
    grid << std::setw(5) << n;
    for (u64 p : cols) {
      auto it = text.find({n, p});
      grid << ' ' << std::setw(static_cast<int>(width))
           << (it == text.end() ? "" : it->second);
    }
    grid << '\n';
  }
  t.grid = grid.str();
  t.csv = csv.str();
  return t;
}

int cmd_table(const fs::path& cache_dir,
              const std::vector<std::pair<int, u64>>& fields,
              const fs::path& csv_path, std::ostream& out, std::ostream& err) {
  try {
    ClassificationCache cache(resolve_cache_dir(cache_dir));
    cache.load();
    for (const auto& w : cache.warnings()) err << "warning: " << w << "\n";
    std::vector<FieldClassification> selected;
    for (auto& r : cache.complete_records()) {
      const bool wanted =
          fields.empty()
              ? r.n >= 5
              : std::find(fields.begin(), fields.end(),
                          std::pair<int, u64>{r.n, r.p}) != fields.end();
      if (wanted) selected.push_back(std::move(r));
    }
    const TableOutput t = render_table(selected);
    out << t.grid;
    const fs::path csv = csv_path.empty() ? cache.dir() / "table.csv" : csv_path;
    if (csv.has_parent_path()) fs::create_directories(csv.parent_path());
    std::ofstream f(csv, std::ios::binary | std::ios::trunc);
    f << t.csv;
    if (!f) throw std::runtime_error("cannot write " + csv.string());
    out << "csv: " << csv.string() << "\n";
    if (t.mismatches != 0) out << t.mismatches << " cell(s) MISMATCH\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int cmd_verify(u64 p, int n, u64 k, std::ostream& out, std::ostream& err) {
  try {
    const FieldCtx ctx = make_field(p, n);
    if (k < 2 || k > max_exponent(ctx.q())) {
      throw std::invalid_argument("k must lie in [2, q-2]");
    }
    out << field_name(p, n) << " k=" << k << ": ";
    const u64 g = std::gcd(k, ctx.q() - 1);
    if (g != 2) {
      out << "NotPlanar (gcd(k, q-1) = " << g << " != 2)\n";
      return kExitOk;
    }
    const DeltaKernel kernel(ctx);
    const VerifyResult vr = exhaustive_verify(kernel, k);
    if (vr.planar) {
      out << outcome_name(Outcome::kVerifiedPlanar)
          << (is_known_family(k, p, n) ? " (known family)" : " (NOT a known family)")
          << "\n";
      return is_known_family(k, p, n) ? kExitOk : kExitPlanarNew;
    }
    const Code image = code_of(ctx, delta(ctx, k, element_from_code(ctx, vr.witness->x1)));
    out << outcome_name(Outcome::kVerifiedNotPlanar) << " witness x1="
        << vr.witness->x1 << " x2=" << vr.witness->x2 << " image=" << image
        << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int cmd_oracle(u64 p, int n, const SearchConfig& config, std::ostream& out,
               std::ostream& err) {
  try {
    config.validate();
    const FieldCtx ctx = make_field(p, n);
    if (ctx.q() > config.oracle_bound) {
      throw std::invalid_argument(
          "refused: q = " + std::to_string(ctx.q()) +
          " exceeds the oracle bound " + std::to_string(config.oracle_bound));
    }
    FieldClassification record = classify_field(p, n, config, Method::kOracle);
    ClassificationCache cache(resolve_cache_dir(config.cache_dir));
    cache.load();
    cache.store(record);
    print_record(record, out);
    return report_new_planar(record, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace planar
