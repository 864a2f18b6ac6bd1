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

#include "sdg/privacy.h"

#include <algorithm>
#include <cmath>

#include "gtest/gtest.h"
#include "sdg/class_zoo.h"

namespace sdg {
namespace {

double LaplaceCdf(double z, double b) {
  return z < 0 ? 0.5 * std::exp(z / b) : 1 - 0.5 * std::exp(-z / b);
}

TEST(ValidatePrivacyParams, Ranges) {
  EXPECT_TRUE(ValidatePrivacyParams({.alpha = 1, .beta = 0}).ok());
  EXPECT_FALSE(ValidatePrivacyParams({.alpha = -1, .beta = 0}).ok());
  EXPECT_FALSE(ValidatePrivacyParams({.alpha = 1, .beta = 1.5}).ok());
}

TEST(LaplaceNoise, MatchesCdf) {
  Rng rng(1);
  const double b = 0.7;
  const int n = 200000;
  std::vector<double> draws(n);
  for (double& z : draws) z = LaplaceNoise(b, rng);
  std::sort(draws.begin(), draws.end());
  double worst = 0.0;
  for (int i = 0; i < n; i += 97) {
    worst = std::max(worst, std::abs(LaplaceCdf(draws[i], b) -
                                     (i + 0.5) / n));
  }
  // Kolmogorov-Smirnov critical value at level 1e-3 is about 1.95 / sqrt(n).
  EXPECT_LT(worst, 1.95 / std::sqrt(static_cast<double>(n)));
}

TEST(Thresh, ReportsTopWellAboveThreshold) {
  Rng rng(2);
  std::vector<double> sigma(100, 1.0);
  int tops = 0;
  for (int i = 0; i < 1000; ++i) {
    tops += Thresh(sigma, 0.5, 100, rng).value() == ThreshOutcome::kTop;
  }
  // P(Lap(0.01) < -0.5) is negligible.
  EXPECT_EQ(tops, 1000);
  EXPECT_FALSE(Thresh({}, 0.5, 1, rng).ok());
  EXPECT_FALSE(Thresh(sigma, 0.5, 0, rng).ok());
}

TEST(Thresh, ErrorProbabilityIsLaplaceTail) {
  // mean 0.6, c = 0.5, N = 10: Bottom iff Lap(0.1) <= -0.1, probability
  // exp(-1) / 2.
  Rng rng(3);
  std::vector<double> sigma = {1, 1, 1, 1, 1, 1, 0, 0, 0, 0};
  const int trials = 100000;
  int bottoms = 0;
  for (int i = 0; i < trials; ++i) {
    bottoms += Thresh(sigma, 0.5, 10, rng).value() == ThreshOutcome::kBottom;
  }
  const double expected = std::exp(-1.0) / 2;
  const double se = std::sqrt(expected * (1 - expected) / trials);
  EXPECT_NEAR(static_cast<double>(bottoms) / trials, expected, 5 * se);
}

TEST(ExpMech, ProbabilitiesMatchClosedForm) {
  ConceptClass c = Thresholds(1).value();  // rows "0" and "1"
  LabeledSample s{.pairs = {{0, true}, {0, true}, {0, false}}};
  std::vector<double> p = ExpMechProbabilities(c, s, 0.8);
  const double w0 = std::exp(-0.8 * 2 / 2);
  const double w1 = std::exp(-0.8 * 1 / 2);
  EXPECT_NEAR(p[0], w0 / (w0 + w1), 1e-15);
  EXPECT_NEAR(p[1], w1 / (w0 + w1), 1e-15);
}

TEST(ExpMech, SamplingFrequencies) {
  ConceptClass c = Symmetrize(Thresholds(3).value());
  LabeledSample s{.pairs = {{0, false}, {1, true}, {2, true}, {2, false}}};
  std::vector<double> p = ExpMechProbabilities(c, s, 1.0);
  std::vector<double> counts(c.num_rows(), 0.0);
  Rng rng(4);
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) {
    counts[ExpMechLearner(c, s, 1.0, rng).value()] += 1;
  }
  for (size_t d = 0; d < c.num_rows(); ++d) {
    const double se = std::sqrt(p[d] * (1 - p[d]) / trials);
    EXPECT_NEAR(counts[d] / trials, p[d], 5 * se + 1e-12);
  }
  EXPECT_FALSE(ExpMechLearner(c, {}, 1.0, rng).ok());
  EXPECT_FALSE(ExpMechLearner(c, s, 0.0, rng).ok());
}

TEST(LearnerSampleComplexity, Formula) {
  LearnerSpec spec{.alpha = 0.5, .constant = 8, .class_size = 16};
  const double expected =
      8 * (std::log(16.0) + std::log(10.0)) * (1 / (0.5 * 0.1) + 1 / 0.01);
  EXPECT_EQ(LearnerSampleComplexity(spec, 0.1, 0.1).value(),
            static_cast<size_t>(std::ceil(expected)));
  EXPECT_FALSE(LearnerSampleComplexity(spec, 0.0, 0.1).ok());
}

TEST(SubsampleAmplify, WorkedExample) {
  auto p = SubsampleAmplify({.alpha = 1.0, .beta = 0.01}, 10, 100);
  ASSERT_TRUE(p.ok());
  EXPECT_EQ(p->alpha, 0.6);
  EXPECT_NEAR(p->beta, std::exp(0.6) * 0.4 * 0.01, 1e-15);
}

TEST(SubsampleAmplify, Preconditions) {
  EXPECT_FALSE(SubsampleAmplify({.alpha = 1.5, .beta = 0}, 10, 100).ok());
  EXPECT_FALSE(SubsampleAmplify({.alpha = 1.0, .beta = 0}, 50, 100).ok());
  EXPECT_TRUE(SubsampleAmplify({.alpha = 1.0, .beta = 0}, 49, 100).ok());
  LedgerEntry e = SubsampledEntry(
      "m", AtomicEntry("inner", {.alpha = 1.0, .beta = 0}), 50, 100);
  EXPECT_FALSE(e.preconditions_hold);
  EXPECT_EQ(e.params, SubsampleFormula({.alpha = 1.0, .beta = 0}, 50, 100));
}

TEST(HalfSampleFormula, Shape) {
  PrivacyParams p = HalfSampleFormula({.alpha = 0.1, .beta = 0.001});
  EXPECT_NEAR(p.alpha, 1.2, 1e-15);
  EXPECT_NEAR(p.beta, std::exp(1.2) * 0.008, 1e-15);
}

TEST(PrivacyLedger, TotalsAndRederivation) {
  PrivacyLedger ledger;
  LedgerEntry round = ComposedEntry(
      "round",
      {SubsampledEntry("learner", AtomicEntry("em", {.alpha = 1, .beta = 0}),
                       5, 50),
       AtomicEntry("thresh", {.alpha = 0.1, .beta = 0})});
  ledger.Add(round);
  ledger.Add(ComposedEntry("repeat", {round}, 3));
  ledger.Add(PostProcessedEntry("output"));
  EXPECT_NEAR(ledger.Total().alpha, 4 * (0.6 + 0.1), 1e-15);
  EXPECT_EQ(ledger.MaxRederivationError(), 0.0);

  LedgerEntry tampered = round;
  tampered.params.alpha += 0.5;
  PrivacyLedger bad;
  bad.Add(tampered);
  EXPECT_NEAR(bad.MaxRederivationError(), 0.5, 1e-15);
}

TEST(PrivacyLedger, HalfSampledEntry) {
  LedgerEntry e = HalfSampledEntry(
      "sanitize", {AtomicEntry("a", {.alpha = 0.1, .beta = 0.01}),
                   AtomicEntry("b", {.alpha = 0.2, .beta = 0.0})});
  EXPECT_EQ(e.params, HalfSampleFormula({.alpha = 0.1 + 0.2, .beta = 0.01}));
  EXPECT_EQ(Rederive(e), e.params);
}

TEST(LaplaceCounter, IsUnbiased) {
  LabeledSample s;
  for (int i = 0; i < 40; ++i) s.pairs.emplace_back(0, i < 10);
  Rng rng(5);
  double sum = 0.0;
  const int trials = 20000;
  for (int i = 0; i < trials; ++i) sum += LaplaceCounter(s, rng).value();
  // Noise sd is sqrt(2) / 2 / 40.
  EXPECT_NEAR(sum / trials, 0.25, 5 * std::sqrt(0.5) / 40 / std::sqrt(trials));
  EXPECT_FALSE(LaplaceCounter({}, rng).ok());
}

TEST(Wilson, KnownInterval) {
  WilsonInterval w = Wilson(5, 10, 1.96);
  EXPECT_NEAR(w.low, 0.2366, 1e-4);
  EXPECT_NEAR(w.high, 0.7634, 1e-4);
  WilsonInterval zero = Wilson(0, 10, 1.96);
  EXPECT_EQ(zero.low, 0.0);
}

TEST(DpAudit, PassesRandomizedResponse) {
  // Randomized response with keep probability e / (1 + e) is 1-DP.
  const double keep = std::exp(1.0) / (1 + std::exp(1.0));
  AuditMechanism rr = [keep](int neighbor, Rng& rng) -> size_t {
    const bool bit = neighbor == 1;
    return rng.Bernoulli(keep) ? bit : !bit;
  };
  auto r = DpAudit(rr, 2, 1.0, {.trials = 100000, .seed = 6});
  ASSERT_TRUE(r.ok());
  EXPECT_FALSE(r->violation);
  EXPECT_NEAR(r->max_log_ratio, 1.0, 0.05);
}

TEST(DpAudit, FlagsUnderstatedPrivacy) {
  AuditMechanism leaky = [](int neighbor, Rng& rng) -> size_t {
    const double p = neighbor == 0 ? 0.9 : 0.1;
    return rng.Bernoulli(p) ? 1 : 0;
  };
  auto r = DpAudit(leaky, 2, 1.0, {.trials = 20000, .seed = 7});
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r->violation);
}

TEST(DpAudit, ExcludesOneSidedEvents) {
  AuditMechanism m = [](int neighbor, Rng&) -> size_t {
    return neighbor == 0 ? 0 : 1;
  };
  auto r = DpAudit(m, 2, 1.0, {.trials = 100, .seed = 8});
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->warnings.size(), 2u);
  EXPECT_FALSE(r->violation);
}

}  // namespace
}  // namespace sdg
