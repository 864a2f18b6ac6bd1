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

#ifndef SDG_MEASURES_H_
#define SDG_MEASURES_H_

#include <cstddef>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "sdg/concept_class.h"
#include "sdg/random.h"

namespace sdg {

// Probability vector over the points of a finite domain.
class Distribution {
 public:
  // Entries in (-1e-12, 0) clamp to zero; anything more negative, a zero
  // total or a non-finite entry is rejected. The result is renormalized.
  static absl::StatusOr<Distribution> Create(std::vector<double> weights);
  static Distribution Uniform(size_t n);
  static Distribution Dirac(size_t n, size_t point);

  size_t size() const { return weights_.size(); }
  double operator[](size_t point) const { return weights_[point]; }
  const std::vector<double>& weights() const { return weights_; }

  // p(d) = sum_x p(x) d(x). `d` must have size() points.
  double Expect(const Hypothesis& d) const;

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  explicit Distribution(std::vector<double> weights)
      : weights_(std::move(weights)) {}

  std::vector<double> weights_;
};

struct Sample {
  std::vector<size_t> points;
};

struct LabeledSample {
  std::vector<std::pair<size_t, bool>> pairs;
};

absl::StatusOr<double> Expect(const Distribution& p, const Hypothesis& d);

// p(d) for every row of `c`.
std::vector<double> ExpectAll(const ConceptClass& c, const Distribution& p);

absl::StatusOr<Distribution> Empirical(const Sample& s, size_t domain_size);

struct IpmResult {
  double value = 0.0;
  // Row index into the symmetrized class.
  size_t witness = 0;
};

// max_d p(d) - q(d) over the symmetrization of `c`, with the lowest-index
// maximizer as witness.
absl::StatusOr<IpmResult> Ipm(const ConceptClass& c, const Distribution& p,
                              const Distribution& q);

// IPM over a class that is already symmetric; skips the closure step.
IpmResult IpmSymmetric(const ConceptClass& c, const Distribution& p,
                       const Distribution& q);

// Inverse-CDF sampling of m IID points.
Sample DrawSample(const Distribution& p, size_t m, Rng& rng);
size_t DrawPoint(const Distribution& p, Rng& rng);

// ceil(C (vc + ln(1/delta)) / eps^2).
absl::StatusOr<size_t> MEmpBound(double eps, double delta, int vc,
                                 double constant = 8.0);

}  // namespace sdg

#endif  // SDG_MEASURES_H_
