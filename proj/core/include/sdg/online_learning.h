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

#ifndef SDG_ONLINE_LEARNING_H_
#define SDG_ONLINE_LEARNING_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "sdg/concept_class.h"
#include "sdg/dimensions.h"
#include "sdg/measures.h"

namespace sdg {

// The learners play on the dual problem: the examples are (mixtures of)
// rows d of a class and the comparators are its points x, evaluated as
// x(d) = c.at(d, x).

enum class LearnerKind { kMw, kAgnosticSoa };

// A finitely supported mixture over rows with a binary label.
struct DistExample {
  std::vector<std::pair<size_t, double>> support;
  bool label = false;

  static DistExample Dirac(size_t row, bool label) {
    return DistExample{.support = {{row, 1.0}}, .label = label};
  }
};

absl::Status ValidateDistExample(const DistExample& ex, size_t num_rows);

// Values f(d) in [0, 1], one per row.
struct Predictor {
  std::vector<double> values;

  // Linear extension to a mixture.
  double Evaluate(const DistExample& ex) const;
  double Loss(const DistExample& ex) const;
};

struct RegretLedger {
  std::vector<DistExample> examples;
  std::vector<double> losses;
};

// |E_{d ~ ex}[x(d)] - label| for point x.
double ComparatorLoss(const ConceptClass& c, size_t x, const DistExample& ex);

// Cumulative predictor loss minus the best fixed point's loss.
double RegretOf(const RegretLedger& ledger, const ConceptClass& c);

class OnlineLearner {
 public:
  virtual ~OnlineLearner() = default;

  virtual LearnerKind kind() const = 0;
  virtual std::unique_ptr<OnlineLearner> Clone() const = 0;

  // Predictor for the next round. Fails once the horizon is exhausted.
  absl::StatusOr<Predictor> Predict() const;

  // Feeds the labelled example of the current round and records the loss
  // of the predictor that was in force.
  absl::Status Update(const DistExample& ex);

  // The mixture p_t with f_t(d) = p_t(d), for proper learners.
  virtual std::optional<Distribution> ProperMixture() const {
    return std::nullopt;
  }

  size_t round() const { return round_; }
  size_t horizon() const { return horizon_; }
  double eta() const { return eta_; }
  size_t num_rows() const { return num_rows_; }
  const RegretLedger& ledger() const { return ledger_; }

 protected:
  OnlineLearner(size_t num_rows, size_t horizon, double eta)
      : num_rows_(num_rows), horizon_(horizon), eta_(eta) {}
  OnlineLearner(const OnlineLearner&) = default;

  virtual Predictor DoPredict() const = 0;
  virtual absl::Status DoUpdate(const DistExample& ex) = 0;

 private:
  size_t num_rows_;
  size_t horizon_;
  double eta_;
  size_t round_ = 0;
  RegretLedger ledger_;
};

// Multiplicative weights over the points of `c` with
// eta = sqrt(8 ln|X| / T).
absl::StatusOr<std::unique_ptr<OnlineLearner>> MakeMwLearner(
    const ConceptClass& c, size_t horizon);

struct AgnosticSoaOptions {
  // Upper limit on the number of experts sum_{j <= l*} C(T, j).
  double max_experts = 1e6;
  // Upper limit on distinct sampled histories tracked for mixtures.
  size_t max_paths = size_t{1} << 14;
  DimensionLimits limits;
};

// Hedge over the experts "run SOA on the dual class, flipping the
// prediction at the rounds in J" for all J with |J| <= l* (the dual
// Littlestone dimension). Mixture examples are handled by taking the exact
// expectation over the sampled rows; identical learner states are merged.
absl::StatusOr<std::unique_ptr<OnlineLearner>> MakeAgnosticSoaLearner(
    const ConceptClass& c, size_t horizon,
    const AgnosticSoaOptions& options = {});

// Number of experts sum_{j <= budget} C(horizon, j), as a double.
double ExpertCount(size_t horizon, int budget);

// SOA on a class H over domain W: s(w) = 0 iff Ldim(H|w=0) = Ldim(H), so
// ties predict 1. The empty class predicts 0 everywhere.
std::vector<uint8_t> SoaPredictions(LittlestoneOracle& oracle,
                                    const RowSet& version_space);

// The SOA rule of a whole class, as a {0,1}-valued predictor over its
// points.
absl::StatusOr<Predictor> SoaRule(const ConceptClass& h);

// Realizable SOA over a class H: predicts by the rule above and restricts
// the version space to the observed label.
class RealizableSoa {
 public:
  explicit RealizableSoa(const ConceptClass& h);

  bool Predict(size_t w);
  // Returns true on a mistake.
  bool Update(size_t w, bool label);

  size_t mistakes() const { return mistakes_; }
  const RowSet& version_space() const { return version_space_; }

 private:
  LittlestoneOracle oracle_;
  RowSet version_space_;
  size_t mistakes_ = 0;
};

}  // namespace sdg

#endif  // SDG_ONLINE_LEARNING_H_
