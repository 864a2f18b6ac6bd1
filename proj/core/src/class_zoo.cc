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

#include "sdg/class_zoo.h"

#include <set>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "sdg/random.h"

namespace sdg {
namespace {

absl::Status CheckPositive(size_t n) {
  if (n == 0) return absl::InvalidArgumentError("n must be at least 1");
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<ZooName> ParseZooName(std::string_view name) {
  if (name == "cube") return ZooName::kCube;
  if (name == "thresholds") return ZooName::kThresholds;
  if (name == "singletons") return ZooName::kSingletons;
  if (name == "half_arcs") return ZooName::kHalfArcs;
  if (name == "random") return ZooName::kRandom;
  return absl::InvalidArgumentError(
      absl::StrFormat("unknown class name '%s'", std::string(name)));
}

std::string_view ZooNameToString(ZooName name) {
  switch (name) {
    case ZooName::kCube:
      return "cube";
    case ZooName::kThresholds:
      return "thresholds";
    case ZooName::kSingletons:
      return "singletons";
    case ZooName::kHalfArcs:
      return "half_arcs";
    case ZooName::kRandom:
      return "random";
  }
  return "unknown";
}

absl::StatusOr<ConceptClass> Cube(size_t n) {
  if (auto s = CheckPositive(n); !s.ok()) return s;
  if (n > 20) {
    return absl::ResourceExhaustedError(
        absl::StrFormat("cube(%d) exceeds the cap of 20 points", n));
  }
  std::vector<Hypothesis> rows;
  rows.reserve(size_t{1} << n);
  for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
    std::vector<uint8_t> bits(n);
    for (size_t i = 0; i < n; ++i) bits[i] = (mask >> (n - 1 - i)) & 1;
    rows.emplace_back(std::move(bits));
  }
  return ConceptClass::Create(n, std::move(rows));
}

absl::StatusOr<ConceptClass> Thresholds(size_t n) {
  if (auto s = CheckPositive(n); !s.ok()) return s;
  std::vector<Hypothesis> rows;
  for (size_t i = 0; i <= n; ++i) {
    std::vector<uint8_t> bits(n);
    for (size_t x = 0; x < n; ++x) bits[x] = x >= i ? 1 : 0;
    rows.emplace_back(std::move(bits));
  }
  return ConceptClass::Create(n, std::move(rows));
}

absl::StatusOr<ConceptClass> Singletons(size_t n) {
  if (auto s = CheckPositive(n); !s.ok()) return s;
  std::vector<Hypothesis> rows;
  for (size_t i = 0; i < n; ++i) {
    std::vector<uint8_t> bits(n, 0);
    bits[i] = 1;
    rows.emplace_back(std::move(bits));
  }
  return ConceptClass::Create(n, std::move(rows));
}

absl::StatusOr<ConceptClass> HalfArcs(size_t n) {
  if (auto s = CheckPositive(n); !s.ok()) return s;
  if (n % 2 != 0) {
    return absl::InvalidArgumentError(
        absl::StrFormat("half_arcs requires an even n, got %d", n));
  }
  std::vector<Hypothesis> rows;
  for (size_t start = 0; start < n; ++start) {
    std::vector<uint8_t> bits(n, 0);
    for (size_t j = 0; j < n / 2; ++j) bits[(start + j) % n] = 1;
    rows.emplace_back(std::move(bits));
  }
  auto arcs = ConceptClass::Create(n, std::move(rows));
  if (!arcs.ok()) return arcs.status();
  return Symmetrize(*arcs);
}

absl::StatusOr<ConceptClass> RandomClass(size_t n, size_t k, uint64_t seed) {
  if (auto s = CheckPositive(n); !s.ok()) return s;
  if (k == 0) return absl::InvalidArgumentError("random class needs k >= 1");
  if (n < 64 && k > (uint64_t{1} << n)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "random class: k = %d exceeds 2^%d distinct rows", k, n));
  }
  Rng rng = Rng::ForStream(seed, "zoo.random", n);
  std::set<std::vector<uint8_t>> seen;
  std::vector<Hypothesis> rows;
  while (rows.size() < k) {
    std::vector<uint8_t> bits(n);
    for (size_t i = 0; i < n; ++i) bits[i] = rng.Bernoulli(0.5) ? 1 : 0;
    if (seen.insert(bits).second) rows.emplace_back(std::move(bits));
  }
  return ConceptClass::Create(n, std::move(rows));
}

absl::StatusOr<ConceptClass> MakeZooClass(ZooName name, size_t n, size_t k,
                                          uint64_t seed) {
  switch (name) {
    case ZooName::kCube:
      return Cube(n);
    case ZooName::kThresholds:
      return Thresholds(n);
    case ZooName::kSingletons:
      return Singletons(n);
    case ZooName::kHalfArcs:
      return HalfArcs(n);
    case ZooName::kRandom:
      return RandomClass(n, k, seed);
  }
  return absl::InvalidArgumentError("unknown class name");
}

}  // namespace sdg
