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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.h"
#include "sdg/version.h"

namespace {

struct SubcommandFlags {
  std::string config;
  std::optional<uint64_t> seed;
  std::optional<size_t> trials;
  std::optional<std::string> out;
  bool override_size_checks = false;
};

constexpr const char* kCommands[][2] = {
    {"dims", "Report VC, Littlestone and dual Littlestone dimensions"},
    {"fool", "Play the fooling game against an honest discriminator"},
    {"lowerbound", "Play the fooling game against the tree adversary"},
    {"dpfool", "Run the private fooling pipeline on a drawn sample"},
    {"sanitize", "Release private estimates of every row frequency"},
    {"puc", "Private uniform convergence on a labelled sample"},
    {"audit", "Empirical privacy audit of a mechanism"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential fooling games and private synthetic data"};
  app.set_version_flag("--version", std::string(sdg::kSdgVersion));
  app.require_subcommand(1);

  std::vector<SubcommandFlags> flags(std::size(kCommands));
  std::vector<CLI::App*> subs;
  for (size_t i = 0; i < std::size(kCommands); ++i) {
    CLI::App* sub = app.add_subcommand(kCommands[i][0], kCommands[i][1]);
    SubcommandFlags& f = flags[i];
    sub->add_option("--config", f.config, "JSON configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", f.seed, "Master seed");
    sub->add_option("--trials", f.trials, "Number of trials");
    sub->add_option("--out", f.out, "Output directory");
    sub->add_flag("--override-size-checks", f.override_size_checks,
                  "Run even when the sample is below a required size");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? sdg::cli::kExitOk : sdg::cli::kExitError;
  }

  for (size_t i = 0; i < subs.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    const SubcommandFlags& f = flags[i];
    auto config = sdg::cli::ReadConfigFile(f.config);
    if (!config.ok()) {
      std::cerr << config.status() << "\n";
      return sdg::cli::kExitError;
    }
    auto options = sdg::cli::ResolveConfig(
        kCommands[i][0], *std::move(config),
        {.seed = f.seed,
         .trials = f.trials,
         .out = f.out,
         .override_size_checks = f.override_size_checks});
    if (!options.ok()) {
      std::cerr << options.status() << "\n";
      return sdg::cli::kExitError;
    }
    return sdg::cli::RunCommand(*options, std::cout, std::cerr);
  }
  return sdg::cli::kExitError;
}
