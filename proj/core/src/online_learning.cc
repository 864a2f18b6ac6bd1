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

#include "sdg/online_learning.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/strings/str_format.h"

namespace sdg {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double LogAddExp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(-std::abs(a - b)));
}

// log sum_{j <= budget} C(r, j); -inf for a negative budget.
double LogExpertCount(size_t r, int budget) {
  if (budget < 0) return kNegInf;
  const double rr = static_cast<double>(r);
  double acc = kNegInf;
  for (int j = 0; j <= budget && static_cast<size_t>(j) <= r; ++j) {
    const double log_binom =
        std::lgamma(rr + 1) - std::lgamma(j + 1.0) - std::lgamma(rr - j + 1);
    acc = LogAddExp(acc, log_binom);
  }
  return acc;
}

class MwLearner final : public OnlineLearner {
 public:
  MwLearner(const ConceptClass& c, size_t horizon, double eta)
      : OnlineLearner(c.num_rows(), horizon, eta),
        class_(std::make_shared<const ConceptClass>(c)),
        log_weights_(c.num_points(), 0.0) {}

  LearnerKind kind() const override { return LearnerKind::kMw; }

  std::unique_ptr<OnlineLearner> Clone() const override {
    return std::make_unique<MwLearner>(*this);
  }

  std::optional<Distribution> ProperMixture() const override {
    return Mixture();
  }

 protected:
  Predictor DoPredict() const override {
    const Distribution p = Mixture();
    Predictor f;
    f.values.resize(class_->num_rows());
    for (size_t d = 0; d < class_->num_rows(); ++d) {
      f.values[d] = p.Expect(class_->row(d));
    }
    return f;
  }

  absl::Status DoUpdate(const DistExample& ex) override {
    for (size_t x = 0; x < log_weights_.size(); ++x) {
      log_weights_[x] -= eta() * ComparatorLoss(*class_, x, ex);
    }
    return absl::OkStatus();
  }

 private:
  Distribution Mixture() const {
    const double top =
        *std::max_element(log_weights_.begin(), log_weights_.end());
    std::vector<double> w(log_weights_.size());
    for (size_t x = 0; x < w.size(); ++x) {
      w[x] = std::exp(log_weights_[x] - top);
    }
    return *Distribution::Create(std::move(w));
  }

  std::shared_ptr<const ConceptClass> class_;
  std::vector<double> log_weights_;
};

// Shared, lazily filled SOA tables for one dual class. Clones of a learner
// share the context, so they must stay on one thread.
struct SoaContext {
  explicit SoaContext(ConceptClass d) : dual(std::move(d)), oracle(dual) {}

  const std::vector<uint8_t>& Predictions(const RowSet& v) {
    auto it = cache.find(v);
    if (it == cache.end()) {
      it = cache.emplace(v, SoaPredictions(oracle, v)).first;
    }
    return it->second;
  }

  ConceptClass dual;
  LittlestoneOracle oracle;
  absl::flat_hash_map<RowSet, std::vector<uint8_t>> cache;
};

// All experts sharing a version space and a remaining flip budget behave
// identically from now on, so they are tracked as one group. `log_weight`
// is the log of the summed Hedge weight per unit of future multiplicity.
struct ExpertGroup {
  RowSet version_space;
  int budget = 0;
  double log_weight = 0.0;
};

bool GroupKeyLess(const ExpertGroup& a, const ExpertGroup& b) {
  if (a.budget != b.budget) return a.budget < b.budget;
  return a.version_space.words() < b.version_space.words();
}

bool GroupKeyEqual(const ExpertGroup& a, const ExpertGroup& b) {
  return a.budget == b.budget && a.version_space == b.version_space;
}

using HedgeState = std::vector<ExpertGroup>;

struct HedgeStateLess {
  bool operator()(const HedgeState& a, const HedgeState& b) const {
    return std::lexicographical_compare(
        a.begin(), a.end(), b.begin(), b.end(),
        [](const ExpertGroup& x, const ExpertGroup& y) {
          if (GroupKeyLess(x, y)) return true;
          if (GroupKeyLess(y, x)) return false;
          return x.log_weight < y.log_weight;
        });
  }
};

class AgnosticSoaLearner final : public OnlineLearner {
 public:
  AgnosticSoaLearner(std::shared_ptr<SoaContext> context, size_t num_rows,
                     size_t horizon, int ldim, double eta, size_t max_paths)
      : OnlineLearner(num_rows, horizon, eta),
        context_(std::move(context)),
        ldim_(ldim),
        max_paths_(max_paths) {
    log_counts_.assign((horizon + 1) * (ldim + 2), kNegInf);
    for (size_t r = 0; r <= horizon; ++r) {
      for (int b = 0; b <= ldim; ++b) {
        log_counts_[r * (ldim + 2) + b + 1] = LogExpertCount(r, b);
      }
    }
    HedgeState start = {ExpertGroup{
        .version_space = RowSet(context_->dual.num_rows(), true),
        .budget = ldim,
        .log_weight = 0.0}};
    paths_.emplace_back(1.0, std::move(start));
  }

  LearnerKind kind() const override { return LearnerKind::kAgnosticSoa; }

  std::unique_ptr<OnlineLearner> Clone() const override {
    return std::make_unique<AgnosticSoaLearner>(*this);
  }

 protected:
  Predictor DoPredict() const override {
    const size_t remaining = horizon() - round();
    Predictor f;
    f.values.assign(num_rows(), 0.0);
    for (const auto& [prob, state] : paths_) {
      double norm = kNegInf;
      for (const auto& g : state) {
        norm = LogAddExp(norm, g.log_weight + LogCount(remaining, g.budget));
      }
      for (const auto& g : state) {
        const double keep =
            std::exp(g.log_weight + LogCount(remaining - 1, g.budget) - norm);
        const double flip = std::exp(
            g.log_weight + LogCount(remaining - 1, g.budget - 1) - norm);
        const auto& soa = context_->Predictions(g.version_space);
        for (size_t w = 0; w < f.values.size(); ++w) {
          f.values[w] += prob * (soa[w] ? keep : flip);
        }
      }
    }
    for (double& v : f.values) v = std::clamp(v, 0.0, 1.0);
    return f;
  }

  absl::Status DoUpdate(const DistExample& ex) override {
    std::map<HedgeState, double, HedgeStateLess> next;
    for (const auto& [prob, state] : paths_) {
      for (const auto& [w, weight] : ex.support) {
        if (weight <= 0.0) continue;
        next[Step(state, w, ex.label)] += prob * weight;
      }
    }
    if (next.size() > max_paths_) {
      return absl::ResourceExhaustedError(absl::StrFormat(
          "AgnosticSOA tracks %d sampled histories, above the cap of %d",
          next.size(), max_paths_));
    }
    paths_.clear();
    for (auto& [state, prob] : next) paths_.emplace_back(prob, state);
    return absl::OkStatus();
  }

 private:
  double LogCount(size_t remaining, int budget) const {
    return log_counts_[remaining * (ldim_ + 2) + budget + 1];
  }

  HedgeState Step(const HedgeState& state, size_t w, bool label) const {
    HedgeState next;
    next.reserve(2 * state.size());
    for (const auto& g : state) {
      const bool a = context_->Predictions(g.version_space)[w] != 0;
      next.push_back(ExpertGroup{
          .version_space = context_->oracle.RestrictTo(g.version_space, w, a),
          .budget = g.budget,
          .log_weight = g.log_weight - (a == label ? 0.0 : eta())});
      if (g.budget > 0) {
        next.push_back(ExpertGroup{
            .version_space =
                context_->oracle.RestrictTo(g.version_space, w, !a),
            .budget = g.budget - 1,
            .log_weight = g.log_weight - (a != label ? 0.0 : eta())});
      }
    }
    std::stable_sort(next.begin(), next.end(), GroupKeyLess);
    HedgeState merged;
    for (auto& g : next) {
      if (!merged.empty() && GroupKeyEqual(merged.back(), g)) {
        merged.back().log_weight =
            LogAddExp(merged.back().log_weight, g.log_weight);
      } else {
        merged.push_back(std::move(g));
      }
    }
    double top = kNegInf;
    for (const auto& g : merged) top = std::max(top, g.log_weight);
    for (auto& g : merged) g.log_weight -= top;
    return merged;
  }

  std::shared_ptr<SoaContext> context_;
  int ldim_;
  size_t max_paths_;
  std::vector<double> log_counts_;
  std::vector<std::pair<double, HedgeState>> paths_;
};

}  // namespace

absl::Status ValidateDistExample(const DistExample& ex, size_t num_rows) {
  if (ex.support.empty()) return absl::InvalidArgumentError("empty support");
  double total = 0.0;
  for (const auto& [row, weight] : ex.support) {
    if (row >= num_rows) {
      return absl::OutOfRangeError(
          absl::StrFormat("support row %d outside class of %d rows", row,
                          num_rows));
    }
    if (!(weight >= -1e-12)) {
      return absl::InvalidArgumentError(
          absl::StrFormat("negative support weight %g", weight));
    }
    total += weight;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    return absl::InvalidArgumentError(
        absl::StrFormat("support weights sum to %.12g", total));
  }
  return absl::OkStatus();
}

double Predictor::Evaluate(const DistExample& ex) const {
  double sum = 0.0;
  for (const auto& [row, weight] : ex.support) sum += weight * values[row];
  return sum;
}

double Predictor::Loss(const DistExample& ex) const {
  return std::abs(Evaluate(ex) - (ex.label ? 1.0 : 0.0));
}

double ComparatorLoss(const ConceptClass& c, size_t x, const DistExample& ex) {
  double e = 0.0;
  for (const auto& [row, weight] : ex.support) {
    if (c.at(row, x)) e += weight;
  }
  return std::abs(e - (ex.label ? 1.0 : 0.0));
}

double RegretOf(const RegretLedger& ledger, const ConceptClass& c) {
  if (ledger.examples.empty()) return 0.0;
  double learner = 0.0;
  for (double loss : ledger.losses) learner += loss;
  double best = std::numeric_limits<double>::infinity();
  for (size_t x = 0; x < c.num_points(); ++x) {
    double total = 0.0;
    for (const auto& ex : ledger.examples) total += ComparatorLoss(c, x, ex);
    best = std::min(best, total);
  }
  return learner - best;
}

absl::StatusOr<Predictor> OnlineLearner::Predict() const {
  if (round_ >= horizon_) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "horizon of %d rounds exhausted", horizon_));
  }
  return DoPredict();
}

absl::Status OnlineLearner::Update(const DistExample& ex) {
  if (round_ >= horizon_) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "horizon of %d rounds exhausted", horizon_));
  }
  if (auto s = ValidateDistExample(ex, num_rows_); !s.ok()) return s;
  const Predictor f = DoPredict();
  if (auto s = DoUpdate(ex); !s.ok()) return s;
  ledger_.examples.push_back(ex);
  ledger_.losses.push_back(f.Loss(ex));
  ++round_;
  return absl::OkStatus();
}

absl::StatusOr<std::unique_ptr<OnlineLearner>> MakeMwLearner(
    const ConceptClass& c, size_t horizon) {
  if (horizon == 0) return absl::InvalidArgumentError("horizon must be >= 1");
  if (c.empty()) return absl::InvalidArgumentError("empty class");
  const double eta = std::sqrt(
      8.0 * std::log(static_cast<double>(c.num_points())) / horizon);
  return std::make_unique<MwLearner>(c, horizon, eta);
}

double ExpertCount(size_t horizon, int budget) {
  return std::exp(LogExpertCount(horizon, budget));
}

absl::StatusOr<std::unique_ptr<OnlineLearner>> MakeAgnosticSoaLearner(
    const ConceptClass& c, size_t horizon, const AgnosticSoaOptions& options) {
  if (horizon == 0) return absl::InvalidArgumentError("horizon must be >= 1");
  if (c.empty()) return absl::InvalidArgumentError("empty class");
  ConceptClass dual = Dualize(c);
  if (dual.num_rows() > options.limits.max_rows) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "dual class has %d rows; the Littlestone computation is capped at %d",
        dual.num_rows(), options.limits.max_rows));
  }
  auto context = std::make_shared<SoaContext>(std::move(dual));
  const int ldim = context->oracle.FullLdim();
  const double log_experts = LogExpertCount(horizon, ldim);
  if (log_experts > std::log(options.max_experts)) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "AgnosticSOA needs %.4g experts (dual Ldim %d, horizon %d), above the "
        "cap of %.4g; use the MW learner instead",
        std::exp(log_experts), ldim, horizon, options.max_experts));
  }
  const double eta = std::sqrt(8.0 * std::max(log_experts, 0.0) / horizon);
  return std::make_unique<AgnosticSoaLearner>(std::move(context),
                                              c.num_rows(), horizon, ldim,
                                              eta, options.max_paths);
}

std::vector<uint8_t> SoaPredictions(LittlestoneOracle& oracle,
                                    const RowSet& version_space) {
  std::vector<uint8_t> out(oracle.num_points(), 0);
  if (version_space.none()) return out;
  const int ldim = oracle.Ldim(version_space);
  for (size_t w = 0; w < out.size(); ++w) {
    const int zero = oracle.Ldim(oracle.RestrictTo(version_space, w, false));
    out[w] = zero == ldim ? 0 : 1;
  }
  return out;
}

absl::StatusOr<Predictor> SoaRule(const ConceptClass& h) {
  if (h.empty()) return absl::InvalidArgumentError("empty class");
  LittlestoneOracle oracle(h);
  const auto bits = SoaPredictions(oracle, RowSet(h.num_rows(), true));
  Predictor f;
  f.values.assign(bits.begin(), bits.end());
  return f;
}

RealizableSoa::RealizableSoa(const ConceptClass& h)
    : oracle_(h), version_space_(h.num_rows(), true) {}

bool RealizableSoa::Predict(size_t w) {
  if (version_space_.none()) return false;
  const int ldim = oracle_.Ldim(version_space_);
  return oracle_.Ldim(oracle_.RestrictTo(version_space_, w, false)) != ldim;
}

bool RealizableSoa::Update(size_t w, bool label) {
  const bool mistake = Predict(w) != label;
  if (mistake) ++mistakes_;
  version_space_ = oracle_.RestrictTo(version_space_, w, label);
  return mistake;
}

}  // namespace sdg
