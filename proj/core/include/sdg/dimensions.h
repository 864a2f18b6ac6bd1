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

#ifndef SDG_DIMENSIONS_H_
#define SDG_DIMENSIONS_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "sdg/concept_class.h"

namespace sdg {

// Guards on the exponential algorithms. VC enumeration is exponential in
// the number of points; the Littlestone recursion in the number of rows.
struct DimensionLimits {
  size_t max_points = 24;
  size_t max_rows = 4096;
};

// Exact Littlestone dimension of sub-classes of a fixed class, memoized on
// the row subset. One oracle per computation; not thread-safe.
class LittlestoneOracle {
 public:
  explicit LittlestoneOracle(const ConceptClass& c);

  // Ldim of the sub-class selected by `rows`; -1 for the empty set.
  int Ldim(const RowSet& rows);
  int FullLdim() { return Ldim(RowSet(num_rows_, true)); }

  // Rows of `rows` labelling `point` with `label`.
  RowSet RestrictTo(const RowSet& rows, size_t point, bool label) const {
    return rows & (label ? masks_.ones[point] : masks_.zeros[point]);
  }

  size_t num_points() const { return num_points_; }
  size_t num_rows() const { return num_rows_; }
  size_t memo_size() const { return memo_.size(); }

 private:
  size_t num_points_;
  size_t num_rows_;
  ColumnMasks masks_;
  absl::flat_hash_map<RowSet, int> memo_;
};

absl::StatusOr<int> LittlestoneDimension(const ConceptClass& c,
                                         const DimensionLimits& limits = {});

absl::StatusOr<int> VcDimension(const ConceptClass& c,
                                const DimensionLimits& limits = {});

// Littlestone dimension of the dual class. Fails with an internal error if
// the primal/dual bound Ldim* <= 2^(2^(Ldim+2)) - 2 is violated.
absl::StatusOr<int> DualLittlestoneDimension(
    const ConceptClass& c, const DimensionLimits& limits = {});

// True iff dual_ldim <= 2^(2^(ldim+2)) - 2.
bool DualLittlestoneBoundHolds(int ldim, int dual_ldim);

struct DimensionReport {
  int vc = 0;
  int ldim = 0;
  int dual_ldim = 0;
  bool dual_bound_holds = true;
};

absl::StatusOr<DimensionReport> ComputeDimensions(
    const ConceptClass& c, const DimensionLimits& limits = {});

// Complete binary mistake tree. Internal nodes are stored in heap order
// (children of node i are 2i+1 for label 0 and 2i+2 for label 1); leaf j
// is reached by the path whose labels are the bits of j, most significant
// first, and is witnessed by row `leaf_rows[j]`.
struct MistakeTree {
  int depth = 0;
  std::vector<size_t> node_points;
  std::vector<size_t> leaf_rows;

  // Points and labels along the root-to-leaf path of leaf j.
  std::vector<std::pair<size_t, bool>> Path(size_t leaf) const;
};

// Checks shape and that every path is realized by its leaf hypothesis.
bool ValidateMistakeTree(const ConceptClass& c, const MistakeTree& tree);

// A shattered tree of exactly `depth`, or nullopt when none exists.
absl::StatusOr<std::optional<MistakeTree>> ShatteredTree(
    const ConceptClass& c, int depth, const DimensionLimits& limits = {});

}  // namespace sdg

#endif  // SDG_DIMENSIONS_H_
