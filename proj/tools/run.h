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

#ifndef SDG_TOOLS_RUN_H_
#define SDG_TOOLS_RUN_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"

namespace sdg::cli {

inline constexpr int kCsvVersion = 1;

struct RunOptions {
  std::string command;
  // Effective configuration, defaults filled in.
  nlohmann::json config;
  uint64_t seed = 0;
  size_t trials = 1;
  size_t threads = 0;
  std::string out_dir;
};

struct TrialOutput {
  std::vector<std::string> cells;
  nlohmann::json result = nlohmann::json::object();
  uint64_t seed = 0;
  bool passed = true;
  std::string failure;
};

// Runs fn(i) for every trial on a worker pool. Results are indexed by
// trial, whatever the completion order.
std::vector<TrialOutput> RunTrials(
    size_t trials, size_t threads,
    const std::function<TrialOutput(size_t)>& fn);

// FNV-1a of the canonical dump of `config` without "out" and "threads".
std::string ConfigHash(const nlohmann::json& config);

// Formats a double for CSV cells.
std::string Cell(double v);

// Writes <out>/<command>.csv, <command>.jsonl when `jsonl` is set, and
// <command>_summary.json. Returns the summary.
absl::StatusOr<nlohmann::json> WriteRun(
    const RunOptions& options, const std::vector<std::string>& columns,
    const std::vector<TrialOutput>& trials, nlohmann::json aggregate,
    bool aggregate_passed, bool jsonl,
    nlohmann::json report = nullptr);

}  // namespace sdg::cli

#endif  // SDG_TOOLS_RUN_H_
