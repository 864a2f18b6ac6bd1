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

#include "sdg/dimensions.h"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace sdg {
namespace {

int FloorLog2(size_t n) { return static_cast<int>(std::bit_width(n)) - 1; }

absl::Status CheckNonempty(const ConceptClass& c) {
  if (c.empty()) return absl::InvalidArgumentError("empty class");
  return absl::OkStatus();
}

absl::Status CheckRows(const ConceptClass& c, const DimensionLimits& limits) {
  if (c.num_rows() > limits.max_rows) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "class has %d rows; the Littlestone computation is capped at %d",
        c.num_rows(), limits.max_rows));
  }
  return absl::OkStatus();
}

}  // namespace

LittlestoneOracle::LittlestoneOracle(const ConceptClass& c)
    : num_points_(c.num_points()),
      num_rows_(c.num_rows()),
      masks_(BuildColumnMasks(c)) {}

int LittlestoneOracle::Ldim(const RowSet& rows) {
  const size_t size = rows.count();
  if (size == 0) return -1;
  if (size == 1) return 0;
  if (auto it = memo_.find(rows); it != memo_.end()) return it->second;

  const int upper = FloorLog2(size);
  int best = 0;
  for (size_t p = 0; p < num_points_ && best < upper; ++p) {
    RowSet zero = rows & masks_.zeros[p];
    const size_t zero_count = zero.count();
    if (zero_count == 0 || zero_count == size) continue;
    const size_t smaller = std::min(zero_count, size - zero_count);
    if (FloorLog2(smaller) + 1 <= best) continue;
    const int a = Ldim(zero);
    if (a + 1 <= best) continue;
    const int b = Ldim(rows & masks_.ones[p]);
    best = std::max(best, 1 + std::min(a, b));
  }
  memo_.emplace(rows, best);
  return best;
}

absl::StatusOr<int> LittlestoneDimension(const ConceptClass& c,
                                         const DimensionLimits& limits) {
  if (auto s = CheckNonempty(c); !s.ok()) return s;
  if (auto s = CheckRows(c, limits); !s.ok()) return s;
  LittlestoneOracle oracle(c);
  return oracle.FullLdim();
}

absl::StatusOr<int> VcDimension(const ConceptClass& c,
                                const DimensionLimits& limits) {
  if (auto s = CheckNonempty(c); !s.ok()) return s;
  if (c.num_points() > limits.max_points) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "class has %d points; VC enumeration is capped at %d",
        c.num_points(), limits.max_points));
  }
  if (auto s = CheckRows(c, limits); !s.ok()) return s;

  const size_t n = c.num_points();
  const int cap = std::min<int>(FloorLog2(c.num_rows()), static_cast<int>(n));
  int vc = 0;
  std::vector<size_t> subset;
  std::vector<uint8_t> seen;
  for (int k = 1; k <= cap; ++k) {
    // Enumerate k-subsets in lexicographic order; stop at the first
    // shattered one. No shattered k-set means none of size k+1 either.
    subset.resize(k);
    for (int i = 0; i < k; ++i) subset[i] = static_cast<size_t>(i);
    bool found = false;
    while (true) {
      seen.assign(size_t{1} << k, 0);
      size_t distinct = 0;
      for (const auto& h : c.rows()) {
        size_t pattern = 0;
        for (int i = 0; i < k; ++i) pattern = (pattern << 1) | h[subset[i]];
        if (!seen[pattern]) {
          seen[pattern] = 1;
          ++distinct;
        }
      }
      if (distinct == (size_t{1} << k)) {
        found = true;
        break;
      }
      int i = k - 1;
      while (i >= 0 && subset[i] == n - k + static_cast<size_t>(i)) --i;
      if (i < 0) break;
      ++subset[i];
      for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
    }
    if (!found) break;
    vc = k;
  }
  return vc;
}

bool DualLittlestoneBoundHolds(int ldim, int dual_ldim) {
  // 2^(ldim+2) >= 63 makes the bound exceed any representable dimension.
  if (ldim + 2 >= 6) return true;
  const uint64_t exponent = uint64_t{1} << (ldim + 2);
  const uint64_t bound = (uint64_t{1} << exponent) - 2;
  return static_cast<uint64_t>(dual_ldim) <= bound;
}

absl::StatusOr<int> DualLittlestoneDimension(const ConceptClass& c,
                                             const DimensionLimits& limits) {
  if (auto s = CheckNonempty(c); !s.ok()) return s;
  const ConceptClass dual = Dualize(c);
  auto dual_ldim = LittlestoneDimension(dual, limits);
  if (!dual_ldim.ok()) return dual_ldim.status();
  if (c.num_rows() <= limits.max_rows) {
    LittlestoneOracle oracle(c);
    const int ldim = oracle.FullLdim();
    if (!DualLittlestoneBoundHolds(ldim, *dual_ldim)) {
      return absl::InternalError(absl::StrFormat(
          "dual Littlestone dimension %d exceeds the bound for Ldim %d",
          *dual_ldim, ldim));
    }
  }
  return dual_ldim;
}

absl::StatusOr<DimensionReport> ComputeDimensions(
    const ConceptClass& c, const DimensionLimits& limits) {
  DimensionReport report;
  auto vc = VcDimension(c, limits);
  if (!vc.ok()) return vc.status();
  auto ldim = LittlestoneDimension(c, limits);
  if (!ldim.ok()) return ldim.status();
  auto dual = LittlestoneDimension(Dualize(c), limits);
  if (!dual.ok()) return dual.status();
  report.vc = *vc;
  report.ldim = *ldim;
  report.dual_ldim = *dual;
  report.dual_bound_holds = DualLittlestoneBoundHolds(*ldim, *dual);
  return report;
}

std::vector<std::pair<size_t, bool>> MistakeTree::Path(size_t leaf) const {
  std::vector<std::pair<size_t, bool>> path;
  size_t node = 0;
  for (int level = 0; level < depth; ++level) {
    const bool bit = (leaf >> (depth - 1 - level)) & 1;
    path.emplace_back(node_points[node], bit);
    node = 2 * node + 1 + (bit ? 1 : 0);
  }
  return path;
}

bool ValidateMistakeTree(const ConceptClass& c, const MistakeTree& tree) {
  if (tree.depth < 0 || tree.depth >= 63) return false;
  const size_t leaves = size_t{1} << tree.depth;
  if (tree.node_points.size() != leaves - 1) return false;
  if (tree.leaf_rows.size() != leaves) return false;
  for (size_t p : tree.node_points) {
    if (p >= c.num_points()) return false;
  }
  for (size_t leaf = 0; leaf < leaves; ++leaf) {
    const size_t row = tree.leaf_rows[leaf];
    if (row >= c.num_rows()) return false;
    for (const auto& [point, label] : tree.Path(leaf)) {
      if (c.at(row, point) != label) return false;
    }
  }
  return true;
}

absl::StatusOr<std::optional<MistakeTree>> ShatteredTree(
    const ConceptClass& c, int depth, const DimensionLimits& limits) {
  if (auto s = CheckNonempty(c); !s.ok()) return s;
  if (depth < 0) return absl::InvalidArgumentError("negative depth");
  if (auto s = CheckRows(c, limits); !s.ok()) return s;
  LittlestoneOracle oracle(c);
  if (oracle.FullLdim() < depth) return std::optional<MistakeTree>();

  MistakeTree tree;
  tree.depth = depth;
  tree.node_points.assign((size_t{1} << depth) - 1, 0);
  tree.leaf_rows.assign(size_t{1} << depth, 0);

  // Each subtree root needs a point whose two restrictions both keep
  // Ldim >= remaining - 1; one exists because Ldim(rows) >= remaining.
  std::function<void(const RowSet&, int, size_t, size_t)> build =
      [&](const RowSet& rows, int remaining, size_t node, size_t leaf_prefix) {
        if (remaining == 0) {
          tree.leaf_rows[leaf_prefix] = rows.first();
          return;
        }
        for (size_t p = 0; p < c.num_points(); ++p) {
          RowSet zero = oracle.RestrictTo(rows, p, false);
          RowSet one = oracle.RestrictTo(rows, p, true);
          if (oracle.Ldim(zero) >= remaining - 1 &&
              oracle.Ldim(one) >= remaining - 1) {
            tree.node_points[node] = p;
            build(zero, remaining - 1, 2 * node + 1, leaf_prefix << 1);
            build(one, remaining - 1, 2 * node + 2, (leaf_prefix << 1) | 1);
            return;
          }
        }
      };
  build(RowSet(c.num_rows(), true), depth, 0, 0);
  return std::optional<MistakeTree>(std::move(tree));
}

}  // namespace sdg
