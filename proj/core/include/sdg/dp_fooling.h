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

#ifndef SDG_DP_FOOLING_H_
#define SDG_DP_FOOLING_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "sdg/concept_class.h"
#include "sdg/dimensions.h"
#include "sdg/measures.h"
#include "sdg/online_learning.h"
#include "sdg/privacy.h"
#include "sdg/random.h"
#include "sdg/sequential_game.h"

namespace sdg {

struct DiscriminatorConfig {
  double eps = 0.1;
  double delta = 0.1;
  double tau = 1.0;
};

absl::Status ValidateDiscriminatorConfig(const DiscriminatorConfig& cfg);

// A named lower bound on |S| and whether the sample met it.
struct SizeCheck {
  std::string name;
  double required = 0.0;
  size_t actual = 0;
  bool passed = false;
  bool overridden = false;
};

// max(m(eps/8, tau delta/2) / tau, 64 ln(2/(tau delta)) / (eps tau)).
absl::StatusOr<SizeCheck> DiscriminatorSizeCheck(const DiscriminatorConfig& cfg,
                                                 const LearnerSpec& learner,
                                                 size_t sample_size);

// Joint law of (x, y) with y uniform, x ~ p_s given y = 0 and x ~ p_t
// given y = 1. Entry 2x + y.
std::vector<double> DiscriminatorMixture(const Distribution& p_s,
                                         const Distribution& p_t);

// P(d(x) != y) under a joint law indexed 2x + y.
double MixtureLoss(const std::vector<double>& joint, const Hypothesis& d);

// Private discriminator. Each call draws ceil(tau |S|) labelled pairs from
// the mixture of p_S and p_t, selects a row with the exponential mechanism,
// complements it into a candidate d_t and tests p_S(d_t) against
// p_t(d_t) + 5 eps / 8 with THRESH.
class DpDiscriminator final : public Discriminator {
 public:
  // `c` must be symmetric. With enforce_size_check the sample must meet
  // DiscriminatorSizeCheck.
  static absl::StatusOr<std::unique_ptr<DpDiscriminator>> Create(
      const ConceptClass& c, Sample s, const DiscriminatorConfig& cfg,
      const LearnerSpec& learner, Rng rng, PrivacyLedger* ledger,
      bool enforce_size_check = true);

  DiscriminatorReply Respond(const Distribution& p_t) override;

  size_t labelled_size() const { return labelled_size_; }
  const Distribution& empirical() const { return empirical_; }
  // Privacy of one call, as recorded in the ledger.
  LedgerEntry RoundEntry() const;

 private:
  DpDiscriminator(const ConceptClass& c, Sample s, Distribution empirical,
                  const DiscriminatorConfig& cfg, const LearnerSpec& learner,
                  Rng rng, PrivacyLedger* ledger);

  const ConceptClass* class_;
  Sample sample_;
  Distribution empirical_;
  DiscriminatorConfig cfg_;
  LearnerSpec learner_;
  Rng rng_;
  PrivacyLedger* ledger_;
  size_t labelled_size_;
};

struct PipelineConfig {
  double eps0 = 0.4;
  double delta0 = 0.2;
  double kappa = 0.5;
  LearnerSpec learner;
  LearnerKind generator_learner = LearnerKind::kMw;
  AgnosticSoaOptions soa_options;
  DimensionLimits limits;
  bool override_size1 = false;
  bool override_size2 = false;
  bool override_size3 = false;

  void OverrideAll() { override_size1 = override_size2 = override_size3 = true; }
};

absl::Status ValidatePipelineConfig(const PipelineConfig& cfg);

struct PipelinePlan {
  int dual_ldim = 0;
  int vc = 0;
  // Round count T(eps0 / 4) of the generator.
  size_t generator_horizon = 1;
  size_t rounds = 1;
  double tau = 1.0;
  size_t labelled_size = 0;
  std::vector<SizeCheck> checks;

  bool checks_pass() const;
};

// T0, tau0 and the three sample-size checks for `sample_size` points drawn
// for the symmetrization of `c`.
absl::StatusOr<PipelinePlan> PlanPipeline(const ConceptClass& c,
                                          size_t sample_size,
                                          const PipelineConfig& cfg);

// Smallest |S| up to `limit` whose plan passes all checks, if any.
absl::StatusOr<std::optional<size_t>> MinimumSampleSize(
    const ConceptClass& c, const PipelineConfig& cfg, size_t limit);

struct DpFoolResult {
  ConceptClass symmetric;
  Distribution p_syn;
  Transcript transcript;
  PrivacyLedger ledger;
  PipelinePlan plan;
  // IPM over the symmetric class between p_syn and the empirical sample.
  double ipm_to_sample = 0.0;
  // T0 (6 tau0 alpha + tau0), the closed-form alpha total.
  double closed_form_alpha = 0.0;
};

// Plays the fooling generator at error eps0/4 against the private
// discriminator with (eps0/2, delta0/2, tau0) for at most T0 rounds and
// outputs the generator's final submission. Rounds not played are charged
// as repeats of the last one.
absl::StatusOr<DpFoolResult> DpFool(const ConceptClass& c, const Sample& s,
                                    const PipelineConfig& cfg, Rng& rng);

struct SanitizeOptions {
  PipelineConfig pipeline;
  // Skips the private pipeline and returns p_syn = p_s.
  bool noiseless = false;
};

struct SanitizerOutput {
  // est[d] = p_syn(d) for every row d of the input class.
  std::vector<double> est;
  Distribution p_syn;
  PrivacyLedger ledger;
};

// Draws |s|/2 points of s with replacement and runs DpFool on them.
absl::StatusOr<SanitizerOutput> Sanitize(const ConceptClass& c,
                                         const Sample& s,
                                         const SanitizeOptions& options,
                                         Rng& rng);

// Frequency of d = 1 on s for every row of `c`.
std::vector<double> SampleFrequencies(const ConceptClass& c, const Sample& s);

struct PucOptions {
  double eps = 0.3;
  double delta = 0.2;
  // Sizes of the two sanitized prefixes; 0 selects |s| / 16 rounded down
  // to an even number.
  size_t m1 = 0;
  size_t m2 = 0;
  SanitizeOptions sanitizer;
  // Rejects samples smaller than 16 max(2 m(eps/18, delta/6),
  // u(eps/18, delta/6)).
  bool enforce_size_check = false;
};

struct PucReport {
  bool sigma = false;
  double p = 0.0;
  double p_sigma = 0.0;
  // Estimates of P(d(x) = sigma).
  std::vector<double> est;
  // Estimates of P(d(x) = sigma | y = sigma).
  std::vector<double> est_sigma;
  std::vector<double> l_hat;
  PrivacyLedger ledger;
  size_t m1 = 0;
  size_t m2 = 0;
};

// est + p_sigma - 2 p_sigma est_sigma, clamped to [0, 1].
double CombineLoss(double est, double p_sigma, double est_sigma);

absl::StatusOr<PucReport> PrivateUniformConvergence(const ConceptClass& c,
                                                    const LabeledSample& s,
                                                    const PucOptions& options,
                                                    Rng& rng);

// Lowest index attaining the minimum.
size_t ArgminLowestIndex(const std::vector<double>& values);

struct PapPacResult {
  size_t hypothesis = 0;
  PucReport report;
};

absl::StatusOr<PapPacResult> PapPacFromPuc(const ConceptClass& c,
                                           const LabeledSample& s,
                                           const PucOptions& options,
                                           Rng& rng);

// Joint laws over (x, y) are Distributions of size 2n indexed 2x + y.
LabeledSample DrawLabeledSample(const Distribution& joint, size_t m,
                                Rng& rng);
double PopulationLoss(const Distribution& joint, const Hypothesis& d);

}  // namespace sdg

#endif  // SDG_DP_FOOLING_H_
