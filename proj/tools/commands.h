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

#ifndef SDG_TOOLS_COMMANDS_H_
#define SDG_TOOLS_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"
#include "run.h"
#include "sdg/concept_class.h"

namespace sdg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariantFailure = 1;
inline constexpr int kExitError = 2;

inline constexpr char kOutDirEnv[] = "SDG_OUT_DIR";

// Command-line values that take precedence over the config file.
struct FlagOverrides {
  std::optional<uint64_t> seed;
  std::optional<size_t> trials;
  std::optional<std::string> out;
  bool override_size_checks = false;
};

// Validates `config` against the command's schema, fills in defaults and
// applies the flags.
absl::StatusOr<RunOptions> ResolveConfig(const std::string& command,
                                         nlohmann::json config,
                                         const FlagOverrides& flags);

absl::StatusOr<nlohmann::json> ReadConfigFile(const std::string& path);

struct NamedClass {
  ConceptClass c;
  std::string name;
};
absl::StatusOr<NamedClass> ResolveClass(const nlohmann::json& spec);

// Each command returns its exit code and reports to `out` and `err`.
int RunCommand(const RunOptions& options, std::ostream& out,
               std::ostream& err);

}  // namespace sdg::cli

#endif  // SDG_TOOLS_COMMANDS_H_
