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

#ifndef SDG_GAME_SOLVER_H_
#define SDG_GAME_SOLVER_H_

#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "sdg/concept_class.h"
#include "sdg/measures.h"
#include "sdg/online_learning.h"

namespace sdg {

// Dense payoff matrix; the row player maximizes, the column player
// minimizes.
class PayoffMatrix {
 public:
  static absl::StatusOr<PayoffMatrix> Create(size_t rows, size_t cols,
                                             std::vector<double> entries);

  // m(d, x) = f(d) - x(d), rows indexed by the rows of `c`, columns by its
  // points.
  static absl::StatusOr<PayoffMatrix> FromPredictor(const Predictor& f,
                                                    const ConceptClass& c);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  double at(size_t r, size_t c) const { return entries_[r * cols_ + c]; }
  const std::vector<double>& entries() const { return entries_; }

 private:
  PayoffMatrix(size_t rows, size_t cols, std::vector<double> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {}

  size_t rows_;
  size_t cols_;
  std::vector<double> entries_;
};

struct GameSolution {
  double value;
  Distribution row_mix;
  Distribution col_mix;
  // max_r (M col_mix)_r and min_c (row_mix^T M)_c.
  double upper;
  double lower;
  // True when the floating-point certificate failed and the exact rational
  // solve was used.
  bool exact;
};

// Solves the game by the packing LP max 1'y s.t. (M + s) y <= 1, y >= 0,
// with Bland's rule. The certificates are re-checked and the solve is
// repeated in exact rational arithmetic if the gap exceeds 1e-9.
absl::StatusOr<GameSolution> SolveZeroSum(const PayoffMatrix& m);

// Same LP, always in exact rational arithmetic.
absl::StatusOr<GameSolution> SolveZeroSumExact(const PayoffMatrix& m);

struct ProperBranch {
  Distribution p;
  // max_d f(d) - p(d).
  double max_advantage;
};

struct SeparatorBranch {
  std::vector<std::pair<size_t, double>> dbar;
  // min_x E_{d ~ dbar}[f(d) - x(d)].
  double margin;
};

using AmenabilityResult = std::variant<ProperBranch, SeparatorBranch>;

inline constexpr double kAmenabilityTolerance = 1e-9;

// Either some p satisfies f(d) - p(d) <= eps/2 for all d, or some mixture
// over rows has E[f(d) - x(d)] > eps/2 for every point x. Game values within
// kAmenabilityTolerance above eps/2 resolve to the first case.
absl::StatusOr<AmenabilityResult> AmenabilityCheck(const Predictor& f,
                                                   const ConceptClass& c,
                                                   double eps);

// Grid oracle: min over the column simplex grid (step 1/grid) of the
// maximum row payoff, or the max-min over the row simplex when that side is
// smaller. Limited to 6x6 matrices and grid <= 400.
absl::StatusOr<double> BruteForceGameValue(const PayoffMatrix& m,
                                           size_t grid);

}  // namespace sdg

#endif  // SDG_GAME_SOLVER_H_
