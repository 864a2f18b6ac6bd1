// Copyright 2026 The sdg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "run.h"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <thread>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "sdg/random.h"
#include "sdg/version.h"

namespace sdg::cli {

std::vector<TrialOutput> RunTrials(
    size_t trials, size_t threads,
    const std::function<TrialOutput(size_t)>& fn) {
  std::vector<TrialOutput> out(trials);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<size_t>(trials, 1));
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < trials; i = next++) out[i] = fn(i);
  };
  std::vector<std::thread> pool;
  for (size_t t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

std::string ConfigHash(const nlohmann::json& config) {
  nlohmann::json copy = config;
  copy.erase("out");
  copy.erase("threads");
  return absl::StrFormat("%016x", Fnv1a64(copy.dump()));
}

std::string Cell(double v) {
  if (std::isnan(v)) return "";
  return absl::StrFormat("%.12g", v);
}

absl::StatusOr<nlohmann::json> WriteRun(
    const RunOptions& options, const std::vector<std::string>& columns,
    const std::vector<TrialOutput>& trials, nlohmann::json aggregate,
    bool aggregate_passed, bool jsonl, nlohmann::json report) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(options.out_dir, ec);
  if (ec) {
    return absl::InternalError(absl::StrCat(
        "cannot create output directory ", options.out_dir, ": ",
        ec.message()));
  }
  const fs::path dir(options.out_dir);
  const std::string hash = ConfigHash(options.config);

  std::ofstream csv(dir / (options.command + ".csv"), std::ios::binary);
  csv << "# sdg " << kSdgVersion << " csv_version=" << kCsvVersion
      << " command=" << options.command << " config_hash=" << hash << "\n";
  csv << absl::StrJoin(columns, ",") << "\n";
  size_t failed = 0;
  for (const auto& t : trials) {
    csv << absl::StrJoin(t.cells, ",") << "\n";
    failed += t.passed ? 0 : 1;
  }
  if (!csv) return absl::InternalError("failed to write the CSV file");

  if (jsonl) {
    std::ofstream lines(dir / (options.command + ".jsonl"), std::ios::binary);
    for (size_t i = 0; i < trials.size(); ++i) {
      nlohmann::json record = {{"command", options.command},
                               {"trial", i},
                               {"seed", trials[i].seed},
                               {"invariants_passed", trials[i].passed},
                               {"result", trials[i].result}};
      if (!trials[i].failure.empty()) record["failure"] = trials[i].failure;
      lines << record.dump() << "\n";
    }
    if (!lines) return absl::InternalError("failed to write the JSONL file");
  }

  nlohmann::json summary = {{"command", options.command},
                            {"version", kSdgVersion},
                            {"csv_version", kCsvVersion},
                            {"config", options.config},
                            {"config_hash", hash},
                            {"trials", trials.size()},
                            {"failed_trials", failed},
                            {"invariants_passed",
                             failed == 0 && aggregate_passed},
                            {"aggregate", std::move(aggregate)}};
  if (!report.is_null()) summary["report"] = std::move(report);
  std::ofstream out(dir / (options.command + "_summary.json"),
                    std::ios::binary);
  out << summary.dump(2) << "\n";
  if (!out) return absl::InternalError("failed to write the summary file");
  return summary;
}

}  // namespace sdg::cli
