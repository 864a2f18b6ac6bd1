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

#include "sdg/game_solver.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "boost/multiprecision/cpp_int.hpp"

namespace sdg {
namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr double kPivotTolerance = 1e-9;
constexpr double kGapTolerance = 1e-9;
constexpr size_t kMaxPivots = 100000;

template <typename Scalar>
struct PackingSolution {
  std::vector<Scalar> primal;
  std::vector<Scalar> dual;
  Scalar objective;
};

// max 1'y s.t. A y <= 1, y >= 0 for A with positive entries, by the
// tableau simplex with Bland's rule.
template <typename Scalar>
absl::StatusOr<PackingSolution<Scalar>> SolvePacking(
    const std::vector<std::vector<Scalar>>& a, const Scalar& tol) {
  const size_t rows = a.size();
  const size_t cols = a[0].size();
  const size_t width = cols + rows + 1;
  std::vector<std::vector<Scalar>> tab(rows + 1,
                                       std::vector<Scalar>(width, Scalar(0)));
  std::vector<size_t> basis(rows);
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) tab[i][j] = a[i][j];
    tab[i][cols + i] = Scalar(1);
    tab[i][width - 1] = Scalar(1);
    basis[i] = cols + i;
  }
  for (size_t j = 0; j < cols; ++j) tab[rows][j] = Scalar(-1);

  for (size_t pivots = 0;; ++pivots) {
    if (pivots == kMaxPivots) {
      return absl::InternalError("simplex did not terminate");
    }
    size_t enter = width;
    for (size_t j = 0; j + 1 < width; ++j) {
      if (tab[rows][j] < -tol) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;
    size_t leave = rows;
    Scalar best_ratio(0);
    for (size_t i = 0; i < rows; ++i) {
      if (!(tab[i][enter] > tol)) continue;
      Scalar ratio = tab[i][width - 1] / tab[i][enter];
      if (leave == rows || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == rows) return absl::InternalError("LP unbounded");
    const Scalar pivot = tab[leave][enter];
    for (auto& v : tab[leave]) v /= pivot;
    for (size_t i = 0; i <= rows; ++i) {
      if (i == leave) continue;
      const Scalar factor = tab[i][enter];
      if (factor == Scalar(0)) continue;
      for (size_t j = 0; j < width; ++j) tab[i][j] -= factor * tab[leave][j];
    }
    basis[leave] = enter;
  }

  PackingSolution<Scalar> out;
  out.primal.assign(cols, Scalar(0));
  for (size_t i = 0; i < rows; ++i) {
    if (basis[i] < cols) out.primal[basis[i]] = tab[i][width - 1];
  }
  out.dual.resize(rows);
  for (size_t i = 0; i < rows; ++i) out.dual[i] = tab[rows][cols + i];
  out.objective = tab[rows][width - 1];
  return out;
}

double ToDouble(double x) { return x; }
double ToDouble(const Rational& x) { return x.convert_to<double>(); }

absl::StatusOr<Distribution> Normalized(std::vector<double> w) {
  for (double& v : w) v = std::max(v, 0.0);
  return Distribution::Create(std::move(w));
}

template <typename Scalar>
absl::StatusOr<GameSolution> SolveWith(const PayoffMatrix& m,
                                       const Scalar& tol, bool exact) {
  const double low = *std::min_element(m.entries().begin(), m.entries().end());
  const double shift = 1.0 - low;
  std::vector<std::vector<Scalar>> a(m.rows(), std::vector<Scalar>(m.cols()));
  for (size_t r = 0; r < m.rows(); ++r) {
    for (size_t c = 0; c < m.cols(); ++c) {
      a[r][c] = Scalar(m.at(r, c)) + Scalar(shift);
    }
  }
  auto lp = SolvePacking<Scalar>(a, tol);
  if (!lp.ok()) return lp.status();
  if (!(lp->objective > Scalar(0))) {
    return absl::InternalError("degenerate LP objective");
  }
  std::vector<double> col(m.cols());
  std::vector<double> row(m.rows());
  for (size_t c = 0; c < m.cols(); ++c) {
    col[c] = ToDouble(Scalar(lp->primal[c] / lp->objective));
  }
  for (size_t r = 0; r < m.rows(); ++r) {
    row[r] = ToDouble(Scalar(lp->dual[r] / lp->objective));
  }
  auto col_mix = Normalized(std::move(col));
  if (!col_mix.ok()) return col_mix.status();
  auto row_mix = Normalized(std::move(row));
  if (!row_mix.ok()) return row_mix.status();

  double upper = -std::numeric_limits<double>::infinity();
  for (size_t r = 0; r < m.rows(); ++r) {
    double v = 0.0;
    for (size_t c = 0; c < m.cols(); ++c) v += m.at(r, c) * (*col_mix)[c];
    upper = std::max(upper, v);
  }
  double lower = std::numeric_limits<double>::infinity();
  for (size_t c = 0; c < m.cols(); ++c) {
    double v = 0.0;
    for (size_t r = 0; r < m.rows(); ++r) v += m.at(r, c) * (*row_mix)[r];
    lower = std::min(lower, v);
  }
  const double value =
      ToDouble(Scalar(Scalar(1) / lp->objective - Scalar(shift)));
  return GameSolution{.value = value,
                      .row_mix = *std::move(row_mix),
                      .col_mix = *std::move(col_mix),
                      .upper = upper,
                      .lower = lower,
                      .exact = exact};
}

bool CertificateHolds(const GameSolution& s) {
  return s.upper - s.lower <= kGapTolerance &&
         std::abs(s.value - s.upper) <= kGapTolerance &&
         std::abs(s.value - s.lower) <= kGapTolerance;
}

std::string ConditionReport(const GameSolution& s) {
  return absl::StrFormat("value %.17g, upper %.17g, lower %.17g, gap %.3g",
                         s.value, s.upper, s.lower, s.upper - s.lower);
}

// min over grid points q of the column simplex of max_r (M q)_r, with
// entries given row-major as rows x cols.
double GridMinMax(const std::vector<double>& m, size_t rows, size_t cols,
                  size_t grid) {
  const double inv = 1.0 / static_cast<double>(grid);
  auto column = [&](size_t r, size_t c) { return m[r * cols + c]; };
  if (cols == 1) {
    double best = -std::numeric_limits<double>::infinity();
    for (size_t r = 0; r < rows; ++r) best = std::max(best, column(r, 0));
    return best;
  }
  std::vector<double> partial(rows, 0.0);
  double best = std::numeric_limits<double>::infinity();

  // The last two coordinates split the remaining mass; the objective is
  // convex in that split, so its minimum is found by bisection on the
  // forward difference.
  auto last_two = [&](size_t left) {
    auto eval = [&](size_t a) {
      double worst = -std::numeric_limits<double>::infinity();
      for (size_t r = 0; r < rows; ++r) {
        const double v = partial[r] + static_cast<double>(a) *
                                          column(r, cols - 2) +
                         static_cast<double>(left - a) * column(r, cols - 1);
        worst = std::max(worst, v);
      }
      return worst * inv;
    };
    size_t lo = 0;
    size_t hi = left;
    while (lo < hi) {
      const size_t mid = lo + (hi - lo) / 2;
      if (eval(mid + 1) >= eval(mid)) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    best = std::min(best, eval(lo));
  };

  auto recurse = [&](auto&& self, size_t coord, size_t left) -> void {
    if (coord + 2 == cols) {
      last_two(left);
      return;
    }
    for (size_t a = 0; a <= left; ++a) {
      for (size_t r = 0; r < rows; ++r) {
        partial[r] += static_cast<double>(a) * column(r, coord);
      }
      self(self, coord + 1, left - a);
      for (size_t r = 0; r < rows; ++r) {
        partial[r] -= static_cast<double>(a) * column(r, coord);
      }
    }
  };
  recurse(recurse, 0, grid);
  return best;
}

}  // namespace

absl::StatusOr<PayoffMatrix> PayoffMatrix::Create(size_t rows, size_t cols,
                                                  std::vector<double> entries) {
  if (rows == 0 || cols == 0) {
    return absl::InvalidArgumentError("empty payoff matrix");
  }
  if (entries.size() != rows * cols) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "expected %d entries, got %d", rows * cols, entries.size()));
  }
  for (double v : entries) {
    if (!std::isfinite(v)) {
      return absl::InvalidArgumentError("non-finite payoff");
    }
  }
  return PayoffMatrix(rows, cols, std::move(entries));
}

absl::StatusOr<PayoffMatrix> PayoffMatrix::FromPredictor(
    const Predictor& f, const ConceptClass& c) {
  if (f.values.size() != c.num_rows()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "predictor has %d values for %d rows", f.values.size(),
        c.num_rows()));
  }
  std::vector<double> entries(c.num_rows() * c.num_points());
  for (size_t d = 0; d < c.num_rows(); ++d) {
    for (size_t x = 0; x < c.num_points(); ++x) {
      entries[d * c.num_points() + x] = f.values[d] - (c.at(d, x) ? 1 : 0);
    }
  }
  return Create(c.num_rows(), c.num_points(), std::move(entries));
}

absl::StatusOr<GameSolution> SolveZeroSum(const PayoffMatrix& m) {
  auto fast = SolveWith<double>(m, kPivotTolerance, /*exact=*/false);
  if (fast.ok() && CertificateHolds(*fast)) return fast;
  auto exact = SolveZeroSumExact(m);
  if (!exact.ok()) return exact.status();
  if (!CertificateHolds(*exact)) {
    return absl::InternalError("exact LP certificate failed: " +
                               ConditionReport(*exact));
  }
  return exact;
}

absl::StatusOr<GameSolution> SolveZeroSumExact(const PayoffMatrix& m) {
  return SolveWith<Rational>(m, Rational(0), /*exact=*/true);
}

absl::StatusOr<AmenabilityResult> AmenabilityCheck(const Predictor& f,
                                                   const ConceptClass& c,
                                                   double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    return absl::InvalidArgumentError("eps must lie in (0, 1)");
  }
  for (double v : f.values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      return absl::InvalidArgumentError("predictor value outside [0, 1]");
    }
  }
  auto m = PayoffMatrix::FromPredictor(f, c);
  if (!m.ok()) return m.status();
  auto game = SolveZeroSum(*m);
  if (!game.ok()) return game.status();

  if (game->value <= eps / 2 + kAmenabilityTolerance) {
    double advantage = -std::numeric_limits<double>::infinity();
    for (size_t d = 0; d < c.num_rows(); ++d) {
      advantage =
          std::max(advantage, f.values[d] - game->col_mix.Expect(c.row(d)));
    }
    return ProperBranch{.p = game->col_mix, .max_advantage = advantage};
  }

  SeparatorBranch sep;
  double total = 0.0;
  for (size_t d = 0; d < c.num_rows(); ++d) {
    if (game->row_mix[d] >= 1e-12) total += game->row_mix[d];
  }
  for (size_t d = 0; d < c.num_rows(); ++d) {
    if (game->row_mix[d] >= 1e-12) {
      sep.dbar.emplace_back(d, game->row_mix[d] / total);
    }
  }
  sep.margin = std::numeric_limits<double>::infinity();
  for (size_t x = 0; x < c.num_points(); ++x) {
    double v = 0.0;
    for (const auto& [d, w] : sep.dbar) {
      v += w * (f.values[d] - (c.at(d, x) ? 1.0 : 0.0));
    }
    sep.margin = std::min(sep.margin, v);
  }
  return sep;
}

absl::StatusOr<double> BruteForceGameValue(const PayoffMatrix& m,
                                           size_t grid) {
  if (m.rows() > 6 || m.cols() > 6) {
    return absl::ResourceExhaustedError(
        "brute-force game oracle is limited to 6x6 matrices");
  }
  if (grid == 0 || grid > 400) {
    return absl::InvalidArgumentError("grid must lie in [1, 400]");
  }
  if (m.cols() <= m.rows()) {
    return GridMinMax(m.entries(), m.rows(), m.cols(), grid);
  }
  // max_p min_c (p'M)_c = -min_p max_c (-M' p)_c.
  std::vector<double> t(m.rows() * m.cols());
  for (size_t r = 0; r < m.rows(); ++r) {
    for (size_t c = 0; c < m.cols(); ++c) {
      t[c * m.rows() + r] = -m.at(r, c);
    }
  }
  return -GridMinMax(t, m.cols(), m.rows(), grid);
}

}  // namespace sdg
