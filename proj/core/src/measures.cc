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

#include "sdg/measures.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace sdg {

absl::StatusOr<Distribution> Distribution::Create(std::vector<double> weights) {
  if (weights.empty()) {
    return absl::InvalidArgumentError("distribution over an empty domain");
  }
  double total = 0.0;
  for (double& w : weights) {
    if (!std::isfinite(w)) {
      return absl::InvalidArgumentError("non-finite weight");
    }
    if (w < -1e-12) {
      return absl::InvalidArgumentError(
          absl::StrFormat("negative weight %g", w));
    }
    if (w < 0.0) w = 0.0;
    total += w;
  }
  if (total <= 0.0) return absl::InvalidArgumentError("weights sum to zero");
  for (double& w : weights) w /= total;
  return Distribution(std::move(weights));
}

Distribution Distribution::Uniform(size_t n) {
  return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Distribution Distribution::Dirac(size_t n, size_t point) {
  std::vector<double> w(n, 0.0);
  w[point] = 1.0;
  return Distribution(std::move(w));
}

double Distribution::Expect(const Hypothesis& d) const {
  double sum = 0.0;
  for (size_t x = 0; x < weights_.size(); ++x) {
    if (d[x]) sum += weights_[x];
  }
  return sum;
}

absl::StatusOr<double> Expect(const Distribution& p, const Hypothesis& d) {
  if (p.size() != d.size()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "dimension mismatch: distribution over %d points, hypothesis over %d",
        p.size(), d.size()));
  }
  return p.Expect(d);
}

std::vector<double> ExpectAll(const ConceptClass& c, const Distribution& p) {
  std::vector<double> out(c.num_rows());
  for (size_t i = 0; i < c.num_rows(); ++i) out[i] = p.Expect(c.row(i));
  return out;
}

absl::StatusOr<Distribution> Empirical(const Sample& s, size_t domain_size) {
  if (s.points.empty()) return absl::InvalidArgumentError("empty sample");
  std::vector<double> counts(domain_size, 0.0);
  for (size_t x : s.points) {
    if (x >= domain_size) {
      return absl::OutOfRangeError(
          absl::StrFormat("sample point %d outside domain of %d", x,
                          domain_size));
    }
    counts[x] += 1.0;
  }
  return Distribution::Create(std::move(counts));
}

IpmResult IpmSymmetric(const ConceptClass& c, const Distribution& p,
                       const Distribution& q) {
  IpmResult best{.value = -2.0, .witness = 0};
  for (size_t i = 0; i < c.num_rows(); ++i) {
    const double gap = p.Expect(c.row(i)) - q.Expect(c.row(i));
    if (gap > best.value) best = {.value = gap, .witness = i};
  }
  best.value = std::clamp(best.value, 0.0, 1.0);
  return best;
}

absl::StatusOr<IpmResult> Ipm(const ConceptClass& c, const Distribution& p,
                              const Distribution& q) {
  if (p.size() != c.num_points() || q.size() != c.num_points()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "dimension mismatch: class over %d points, distributions over %d "
        "and %d",
        c.num_points(), p.size(), q.size()));
  }
  if (c.IsSymmetric()) return IpmSymmetric(c, p, q);
  return IpmSymmetric(Symmetrize(c), p, q);
}

size_t DrawPoint(const Distribution& p, Rng& rng) {
  const double u = rng.Uniform();
  double cumulative = 0.0;
  size_t last_positive = 0;
  for (size_t x = 0; x < p.size(); ++x) {
    if (p[x] <= 0.0) continue;
    cumulative += p[x];
    last_positive = x;
    if (u < cumulative) return x;
  }
  return last_positive;
}

Sample DrawSample(const Distribution& p, size_t m, Rng& rng) {
  std::vector<double> cdf(p.size());
  double cumulative = 0.0;
  size_t last_positive = 0;
  for (size_t x = 0; x < p.size(); ++x) {
    cumulative += p[x];
    cdf[x] = cumulative;
    if (p[x] > 0.0) last_positive = x;
  }
  Sample s;
  s.points.reserve(m);
  for (size_t i = 0; i < m; ++i) {
    const double u = rng.Uniform();
    size_t x = static_cast<size_t>(
        std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    s.points.push_back(std::min(x, last_positive));
  }
  return s;
}

absl::StatusOr<size_t> MEmpBound(double eps, double delta, int vc,
                                 double constant) {
  if (!(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError("eps and delta must lie in (0, 1)");
  }
  if (vc < 0) return absl::InvalidArgumentError("negative VC dimension");
  const double m = constant * (vc + std::log(1.0 / delta)) / (eps * eps);
  return static_cast<size_t>(std::ceil(m));
}

}  // namespace sdg
