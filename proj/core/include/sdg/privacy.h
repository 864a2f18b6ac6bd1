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

#ifndef SDG_PRIVACY_H_
#define SDG_PRIVACY_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "sdg/concept_class.h"
#include "sdg/measures.h"
#include "sdg/random.h"

namespace sdg {

struct PrivacyParams {
  double alpha = 0.0;
  double beta = 0.0;

  friend bool operator==(const PrivacyParams&, const PrivacyParams&) =
      default;
};

absl::Status ValidatePrivacyParams(const PrivacyParams& p);

// Laplace(0, scale) by inverse CDF from one uniform draw.
double LaplaceNoise(double scale, Rng& rng);

enum class ThreshOutcome { kBottom, kTop };

// One-shot noisy threshold: Top iff mean(sigma) + Lap(1/n_margin) > c.
// (n_margin / |sigma|, 0)-private.
absl::StatusOr<ThreshOutcome> Thresh(const std::vector<double>& sigma,
                                     double c, size_t n_margin, Rng& rng);

// THRESH given the mean of sigma directly.
absl::StatusOr<ThreshOutcome> ThreshFromMean(double mean, double c,
                                             size_t n_margin, Rng& rng);

// Exponential mechanism over the rows of `c` with score minus the number
// of misclassified pairs: P(d) proportional to exp(-alpha * err(d) / 2).
// (alpha, 0)-private.
absl::StatusOr<size_t> ExpMechLearner(const ConceptClass& c,
                                      const LabeledSample& s, double alpha,
                                      Rng& rng);

// The selection probabilities used by ExpMechLearner.
std::vector<double> ExpMechProbabilities(const ConceptClass& c,
                                         const LabeledSample& s,
                                         double alpha);

struct LearnerSpec {
  double alpha = 1.0;
  double constant = 8.0;
  // |D| of the class the learner selects from.
  size_t class_size = 2;
};

// ceil(C (ln|D| + ln(1/delta)) (1/(alpha eps) + 1/eps^2)).
absl::StatusOr<size_t> LearnerSampleComplexity(const LearnerSpec& spec,
                                               double eps, double delta);

// Subsampling u of v records: (6 a u/v, exp(6 a u/v) (4u/v) b). Requires
// alpha <= 1 and v > 2u.
absl::StatusOr<PrivacyParams> SubsampleAmplify(const PrivacyParams& p,
                                               size_t u, size_t v);

// The same formula without the preconditions.
PrivacyParams SubsampleFormula(const PrivacyParams& p, size_t u, size_t v);

// Running a mechanism on a with-replacement half of its input:
// (12 a, exp(12 a) 8 b).
PrivacyParams HalfSampleFormula(const PrivacyParams& p);

PrivacyParams Compose(const std::vector<PrivacyParams>& parts);

enum class Derivation { kAtomic, kComposed, kAmplified, kPostProcessed };
enum class AmplificationRule { kSubsample, kHalfSample };

struct LedgerEntry {
  std::string mechanism;
  PrivacyParams params;
  Derivation derivation = Derivation::kAtomic;

  // Composed: params = repeat * sum(children). Amplified: the rule applied
  // to base = sum(children).
  std::vector<LedgerEntry> children;
  size_t repeat = 1;

  AmplificationRule rule = AmplificationRule::kSubsample;
  size_t u = 0;
  size_t v = 0;
  // False when the amplification was recorded outside its preconditions.
  bool preconditions_hold = true;
};

LedgerEntry AtomicEntry(std::string mechanism, PrivacyParams params);
LedgerEntry ComposedEntry(std::string mechanism,
                          std::vector<LedgerEntry> children,
                          size_t repeat = 1);
LedgerEntry SubsampledEntry(std::string mechanism, LedgerEntry inner,
                            size_t u, size_t v);
LedgerEntry HalfSampledEntry(std::string mechanism,
                             std::vector<LedgerEntry> inner);
LedgerEntry PostProcessedEntry(std::string mechanism);

// Recomputes an entry's params from its provenance alone.
PrivacyParams Rederive(const LedgerEntry& entry);

class PrivacyLedger {
 public:
  void Add(LedgerEntry entry) { entries_.push_back(std::move(entry)); }
  const std::vector<LedgerEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  PrivacyParams Total() const;

  // Largest deviation between any recorded params and their re-derivation.
  double MaxRederivationError() const;

 private:
  std::vector<LedgerEntry> entries_;
};

// Fraction of label-1 pairs plus Lap(1/2)/m. The fraction has sensitivity
// 1/m and the noise scale is 1/(2m), so the mechanism is (2, 0)-private.
absl::StatusOr<double> LaplaceCounter(const LabeledSample& s, Rng& rng);
inline constexpr PrivacyParams kLaplaceCounterPrivacy{.alpha = 2.0,
                                                      .beta = 0.0};

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};
WilsonInterval Wilson(size_t successes, size_t trials, double z);

struct AuditOptions {
  size_t trials = 100000;
  double z = 3.0;
  double slack = 0.0;
  uint64_t seed = 0;
};

struct AuditEvent {
  size_t event = 0;
  size_t count_a = 0;
  size_t count_b = 0;
  // ln(P_a(E) / P_b(E)) in the direction with the larger estimate.
  double log_ratio = 0.0;
  double log_ratio_lower = 0.0;
  bool excluded = false;
};

struct AuditReport {
  double max_log_ratio = 0.0;
  double max_lower_bound = 0.0;
  double declared_alpha = 0.0;
  bool violation = false;
  std::vector<AuditEvent> events;
  std::vector<std::string> warnings;
};

// Runs `mechanism(neighbor, rng)` for neighbor 0 and 1, `trials` times
// each, on outputs in [0, num_events). Events with a zero count on either
// side are excluded with a warning. A violation is flagged when the lower
// confidence bound of some log ratio exceeds declared_alpha + slack.
using AuditMechanism = std::function<size_t(int neighbor, Rng& rng)>;
absl::StatusOr<AuditReport> DpAudit(const AuditMechanism& mechanism,
                                    size_t num_events, double declared_alpha,
                                    const AuditOptions& options);

}  // namespace sdg

#endif  // SDG_PRIVACY_H_
