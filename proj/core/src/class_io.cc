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

#include "sdg/class_io.h"

#include <fstream>
#include <sstream>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"

namespace sdg {
namespace {

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    return absl::NotFoundError(absl::StrFormat("cannot open '%s'", path));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

absl::StatusOr<ConceptClass> ParseClass(std::string_view text) {
  std::vector<absl::string_view> lines;
  for (absl::string_view line :
       absl::StrSplit(absl::string_view(text.data(), text.size()), '\n')) {
    line = absl::StripAsciiWhitespace(line);
    if (line.empty() || line.front() == '#') continue;
    lines.push_back(line);
  }
  if (lines.empty()) return absl::InvalidArgumentError("missing header");

  std::vector<absl::string_view> header =
      absl::StrSplit(lines[0], ' ', absl::SkipWhitespace());
  size_t n = 0;
  size_t k = 0;
  if (header.size() != 2 || !absl::SimpleAtoi(header[0], &n) ||
      !absl::SimpleAtoi(header[1], &k)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("malformed header '%s'; expected \"n k\"", std::string(lines[0])));
  }
  if (lines.size() - 1 != k) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "header declares %d rows but %d follow", k, lines.size() - 1));
  }
  std::vector<Hypothesis> rows;
  rows.reserve(k);
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].size() != n) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "row %d has length %d, expected %d", i, lines[i].size(), n));
    }
    auto h = Hypothesis::FromString(
        std::string_view(lines[i].data(), lines[i].size()));
    if (!h.ok()) return h.status();
    rows.push_back(*std::move(h));
  }
  return ConceptClass::Create(n, std::move(rows));
}

absl::StatusOr<ConceptClass> LoadClassFile(const std::string& path) {
  auto text = ReadFile(path);
  if (!text.ok()) return text.status();
  return ParseClass(*text);
}

std::string FormatClass(const ConceptClass& c) {
  std::string out = absl::StrFormat("%d %d\n", c.num_points(), c.num_rows());
  for (const auto& h : c.rows()) {
    out += h.ToString();
    out += '\n';
  }
  return out;
}

absl::StatusOr<std::vector<double>> ParseWeights(std::string_view text) {
  std::vector<double> weights;
  for (absl::string_view token :
       absl::StrSplit(absl::string_view(text.data(), text.size()),
                      absl::ByAnyChar(" \t\r\n"), absl::SkipEmpty())) {
    double w = 0.0;
    if (!absl::SimpleAtod(token, &w)) {
      return absl::InvalidArgumentError(
          absl::StrFormat("not a number: '%s'", std::string(token)));
    }
    weights.push_back(w);
  }
  if (weights.empty()) return absl::InvalidArgumentError("no weights");
  return weights;
}

absl::StatusOr<std::vector<double>> LoadWeightsFile(const std::string& path) {
  auto text = ReadFile(path);
  if (!text.ok()) return text.status();
  return ParseWeights(*text);
}

}  // namespace sdg
