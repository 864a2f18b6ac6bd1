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

// Independent reference implementations used as test oracles. They work on
// plain bit tables and share no code with the library beyond its types.

#ifndef SDG_TESTS_ORACLES_H_
#define SDG_TESTS_ORACLES_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sdg/concept_class.h"

namespace sdg::testing {

using Table = std::vector<std::vector<uint8_t>>;

inline Table ToTable(const ConceptClass& c) {
  Table t;
  for (const auto& h : c.rows()) {
    t.emplace_back(h.bits().begin(), h.bits().end());
  }
  return t;
}

// Transpose with duplicate columns kept.
inline Table Transpose(const Table& t, size_t num_points) {
  Table out(num_points, std::vector<uint8_t>(t.size()));
  for (size_t r = 0; r < t.size(); ++r) {
    for (size_t x = 0; x < num_points; ++x) out[x][r] = t[r][x];
  }
  return out;
}

inline Table Filter(const Table& t, size_t x, uint8_t label) {
  Table out;
  for (const auto& row : t) {
    if (row[x] == label) out.push_back(row);
  }
  return out;
}

// True iff some complete mistake tree of the given depth is shattered.
inline bool ShattersTreeOfDepth(const Table& t, size_t num_points,
                                int depth) {
  if (t.empty()) return false;
  if (depth == 0) return true;
  for (size_t x = 0; x < num_points; ++x) {
    if (ShattersTreeOfDepth(Filter(t, x, 0), num_points, depth - 1) &&
        ShattersTreeOfDepth(Filter(t, x, 1), num_points, depth - 1)) {
      return true;
    }
  }
  return false;
}

// Largest depth of a shattered tree, -1 for an empty table.
inline int ExhaustiveLdim(const Table& t, size_t num_points) {
  int depth = -1;
  while (ShattersTreeOfDepth(t, num_points, depth + 1)) ++depth;
  return depth;
}

// Largest k such that some k-subset of points is shattered.
inline int BruteForceVc(const Table& t, size_t num_points) {
  int best = 0;
  for (uint32_t mask = 1; mask < (uint32_t{1} << num_points); ++mask) {
    const int k = __builtin_popcount(mask);
    if (k <= best) continue;
    std::vector<uint8_t> seen(size_t{1} << k, 0);
    size_t distinct = 0;
    for (const auto& row : t) {
      uint32_t pattern = 0;
      int bit = 0;
      for (size_t x = 0; x < num_points; ++x) {
        if (mask & (uint32_t{1} << x)) {
          pattern |= static_cast<uint32_t>(row[x]) << bit;
          ++bit;
        }
      }
      if (!seen[pattern]) {
        seen[pattern] = 1;
        ++distinct;
      }
    }
    if (distinct == (size_t{1} << k)) best = k;
  }
  return best;
}

}  // namespace sdg::testing

#endif  // SDG_TESTS_ORACLES_H_
