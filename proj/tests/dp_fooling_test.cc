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

#include "sdg/dp_fooling.h"

#include <cmath>

#include "gtest/gtest.h"
#include "sdg/class_zoo.h"

namespace sdg {
namespace {

ConceptClass ConstantClass(size_t n) {
  return ConceptClass::Create(n, {Hypothesis(std::vector<uint8_t>(n, 0))})
      .value();
}

Sample Repeat(std::vector<size_t> pattern, size_t copies) {
  Sample s;
  for (size_t i = 0; i < copies; ++i) {
    s.points.insert(s.points.end(), pattern.begin(), pattern.end());
  }
  return s;
}

TEST(DiscriminatorMixture, LossEqualsHalfOnePlusAdvantage) {
  ConceptClass c = Symmetrize(RandomClass(5, 8, 2).value());
  Distribution p_s = Distribution::Create({1, 2, 0, 4, 3}).value();
  Distribution p_t = Distribution::Create({0, 1, 5, 1, 1}).value();
  std::vector<double> joint = DiscriminatorMixture(p_s, p_t);
  double total = 0.0;
  for (double w : joint) total += w;
  EXPECT_NEAR(total, 1.0, 1e-15);
  for (const auto& d : c.rows()) {
    EXPECT_NEAR(MixtureLoss(joint, d),
                (1 + p_s.Expect(d) - p_t.Expect(d)) / 2, 1e-15);
  }
}

TEST(DiscriminatorSizeCheck, Formula) {
  LearnerSpec learner{.alpha = 1, .constant = 8, .class_size = 16};
  DiscriminatorConfig cfg{.eps = 0.2, .delta = 0.1, .tau = 0.5};
  auto check = DiscriminatorSizeCheck(cfg, learner, 1000);
  ASSERT_TRUE(check.ok());
  const double m = static_cast<double>(
      LearnerSampleComplexity(learner, 0.2 / 8, 0.05 / 2).value());
  const double expected =
      std::max(m / 0.5, 64 * std::log(2 / 0.05) / (0.2 * 0.5));
  EXPECT_DOUBLE_EQ(check->required, expected);
  EXPECT_FALSE(check->passed);
  EXPECT_FALSE(DiscriminatorSizeCheck({.eps = 0.2, .delta = 0.1, .tau = 0},
                                      learner, 10)
                   .ok());
}

TEST(DpDiscriminator, RejectsBadInput) {
  PrivacyLedger ledger;
  ConceptClass sym = Symmetrize(Singletons(3).value());
  DiscriminatorConfig cfg{.eps = 0.4, .delta = 0.1, .tau = 1.0};
  EXPECT_FALSE(DpDiscriminator::Create(Singletons(3).value(), Repeat({0}, 5),
                                       cfg, {}, Rng(1), &ledger, false)
                   .ok());
  EXPECT_EQ(DpDiscriminator::Create(sym, Repeat({0}, 5), cfg, {}, Rng(1),
                                    &ledger, true)
                .status()
                .code(),
            absl::StatusCode::kFailedPrecondition);
  EXPECT_FALSE(DpDiscriminator::Create(sym, Repeat({3}, 5), cfg, {}, Rng(1),
                                       &ledger, false)
                   .ok());
}

TEST(DpDiscriminator, FindsDisjointSupportDistinguisher) {
  ConceptClass sym = Symmetrize(Singletons(3).value());
  Sample s = Repeat({0}, 400);
  Distribution p_s = Distribution::Dirac(3, 0);
  Distribution p_t = Distribution::Dirac(3, 1);
  PrivacyLedger ledger;
  auto disc = DpDiscriminator::Create(
                  sym, s, {.eps = 0.4, .delta = 0.1, .tau = 0.5},
                  {.alpha = 1, .class_size = sym.num_rows()}, Rng(3), &ledger,
                  false)
                  .value();
  int good = 0;
  for (int i = 0; i < 100; ++i) {
    DiscriminatorReply r = disc->Respond(p_t);
    if (!r.win) {
      const Hypothesis& d = sym.row(r.distinguisher);
      good += p_s.Expect(d) - p_t.Expect(d) >= 0.2;
    }
  }
  EXPECT_GE(good, 95);
  EXPECT_EQ(ledger.entries().size(), 100u);
}

TEST(DpDiscriminator, WinsWhenCandidateEqualsSample) {
  ConceptClass sym = Symmetrize(Singletons(4).value());
  Sample s = Repeat({0, 1, 2, 3}, 100);
  PrivacyLedger ledger;
  auto disc = DpDiscriminator::Create(
                  sym, s, {.eps = 0.4, .delta = 0.1, .tau = 0.5},
                  {.alpha = 1, .class_size = sym.num_rows()}, Rng(4), &ledger,
                  false)
                  .value();
  int wins = 0;
  for (int i = 0; i < 100; ++i) wins += disc->Respond(disc->empirical()).win;
  EXPECT_GE(wins, 95);
}

TEST(DpDiscriminator, RoundEntryUsesSubsampleRatio) {
  ConceptClass sym = Symmetrize(Singletons(2).value());
  PrivacyLedger ledger;
  auto disc = DpDiscriminator::Create(sym, Repeat({0, 1}, 50),
                                      {.eps = 0.4, .delta = 0.1, .tau = 0.1},
                                      {.alpha = 0.5}, Rng(5), &ledger, false)
                  .value();
  EXPECT_EQ(disc->labelled_size(), 10u);
  LedgerEntry e = disc->RoundEntry();
  EXPECT_NEAR(e.params.alpha, 6 * 0.5 * 0.1 + 0.1, 1e-15);
  ASSERT_EQ(e.children.size(), 2u);
  EXPECT_EQ(e.children[0].u, 10u);
  EXPECT_EQ(e.children[0].v, 100u);
  EXPECT_TRUE(e.children[0].preconditions_hold);
}

TEST(PlanPipeline, RoundsAndChecks) {
  PipelineConfig cfg{.eps0 = 0.4, .delta0 = 0.2, .kappa = 0.5};
  auto plan = PlanPipeline(Thresholds(7).value(), 400, cfg);
  ASSERT_TRUE(plan.ok()) << plan.status();
  EXPECT_EQ(plan->rounds, std::min<size_t>(20, plan->generator_horizon));
  EXPECT_DOUBLE_EQ(plan->tau, 1.0 / plan->rounds);
  ASSERT_EQ(plan->checks.size(), 3u);
  EXPECT_FALSE(plan->checks_pass());
  cfg.OverrideAll();
  EXPECT_TRUE(PlanPipeline(Thresholds(7).value(), 400, cfg)->checks_pass());
}

TEST(MinimumSampleSize, IsTheSmallestPassingSize) {
  PipelineConfig cfg{.eps0 = 0.9, .delta0 = 0.5, .kappa = 0.9};
  ConceptClass c = ConstantClass(2);
  auto n = MinimumSampleSize(c, cfg, size_t{1} << 30);
  ASSERT_TRUE(n.ok());
  ASSERT_TRUE(n->has_value());
  EXPECT_TRUE(PlanPipeline(c, **n, cfg)->checks_pass());
  EXPECT_FALSE(PlanPipeline(c, **n - 1, cfg)->checks_pass());
}

TEST(DpFool, ConstantClassWinsInOneRound) {
  ConceptClass c = ConstantClass(3);
  PipelineConfig cfg{.eps0 = 0.4, .delta0 = 0.2, .kappa = 0.5};
  cfg.OverrideAll();
  Rng rng(6);
  auto r = DpFool(c, Repeat({0, 1, 2, 2}, 50), cfg, rng);
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_EQ(r->plan.rounds, 1u);
  EXPECT_EQ(r->transcript.won_round, 1u);
  EXPECT_EQ(r->ipm_to_sample, 0.0);
  ASSERT_EQ(r->ledger.entries().size(), 1u);
  EXPECT_NEAR(r->ledger.Total().alpha, 6 * cfg.learner.alpha + 1, 1e-12);
}

TEST(DpFool, RefusesUndersizedSampleWithoutOverride) {
  PipelineConfig cfg;
  Rng rng(7);
  auto r = DpFool(Thresholds(7).value(), Repeat({0, 3}, 50), cfg, rng);
  EXPECT_EQ(r.status().code(), absl::StatusCode::kFailedPrecondition);
}

TEST(DpFool, LedgerMatchesClosedForm) {
  ConceptClass c = Thresholds(7).value();
  PipelineConfig cfg{.eps0 = 0.4, .delta0 = 0.2, .kappa = 0.5};
  cfg.OverrideAll();
  // 400 points give T0 = 20 and tau0 |S| = 20 exactly.
  Sample s = Repeat({0, 1, 2, 3, 4, 5, 6, 6}, 50);
  Rng rng(8);
  auto r = DpFool(c, s, cfg, rng);
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_EQ(r->plan.rounds, 20u);
  EXPECT_NEAR(r->ledger.Total().alpha, r->closed_form_alpha, 1e-12);
  EXPECT_EQ(r->ledger.MaxRederivationError(), 0.0);
  EXPECT_LE(r->transcript.rounds.size(), 20u);
}

TEST(Sanitize, RejectsOddInput) {
  Rng rng(9);
  EXPECT_FALSE(Sanitize(Thresholds(3).value(), Repeat({0, 1, 2}, 1), {}, rng)
                   .ok());
}

TEST(Sanitize, NoiselessModeReturnsFrequencies) {
  ConceptClass c = Thresholds(4).value();
  Sample s = Repeat({0, 1, 1, 3}, 3);
  Rng rng(10);
  auto out = Sanitize(c, s, {.noiseless = true}, rng);
  ASSERT_TRUE(out.ok());
  std::vector<double> freq = SampleFrequencies(c, s);
  for (size_t d = 0; d < c.num_rows(); ++d) {
    EXPECT_NEAR(out->est[d], freq[d], 1e-15);
  }
  EXPECT_TRUE(out->ledger.empty());
}

TEST(Sanitize, ConstantClassHasNoError) {
  ConceptClass c = ConstantClass(4);
  SanitizeOptions options;
  options.pipeline.OverrideAll();
  Rng rng(11);
  auto out = Sanitize(c, Repeat({0, 1, 2, 3}, 10), options, rng);
  ASSERT_TRUE(out.ok()) << out.status();
  EXPECT_EQ(out->est[0], 0.0);
  ASSERT_EQ(out->ledger.entries().size(), 1u);
  EXPECT_EQ(out->ledger.entries()[0].rule, AmplificationRule::kHalfSample);
}

TEST(Sanitize, EstimateIsLinearInSyntheticDistribution) {
  ConceptClass c = Thresholds(7).value();
  SanitizeOptions options;
  options.pipeline.OverrideAll();
  Rng rng(12);
  auto out = Sanitize(c, Repeat({0, 2, 4, 6, 6, 5}, 40), options, rng);
  ASSERT_TRUE(out.ok()) << out.status();
  for (size_t d = 0; d < c.num_rows(); ++d) {
    double sum = 0.0;
    for (size_t x = 0; x < c.num_points(); ++x) {
      if (c.at(d, x)) sum += out->p_syn[x];
    }
    EXPECT_NEAR(out->est[d], sum, 1e-12);
  }
}

TEST(CombineLoss, RecombinesConditionalProbabilities) {
  ConceptClass c = Symmetrize(Thresholds(3).value());
  Distribution joint =
      Distribution::Create({0.1, 0.05, 0.2, 0.15, 0.05, 0.45}).value();
  for (bool sigma : {false, true}) {
    for (const auto& d : c.rows()) {
      double p_d_sigma = 0.0;
      double p_y_sigma = 0.0;
      double p_both = 0.0;
      for (size_t x = 0; x < 3; ++x) {
        for (int y = 0; y < 2; ++y) {
          const double w = joint[2 * x + y];
          const bool ds = d[x] == sigma;
          const bool ys = (y == 1) == sigma;
          p_d_sigma += ds ? w : 0;
          p_y_sigma += ys ? w : 0;
          p_both += ds && ys ? w : 0;
        }
      }
      EXPECT_NEAR(CombineLoss(p_d_sigma, p_y_sigma, p_both / p_y_sigma),
                  PopulationLoss(joint, d), 1e-12);
    }
  }
}

TEST(PrivateUniformConvergence, NoiselessSanitizerOnEnumeratedSample) {
  ConceptClass c = Thresholds(3).value();
  LabeledSample s;
  for (int copy = 0; copy < 20; ++copy) {
    s.pairs.insert(s.pairs.end(),
                   {{0, false}, {1, true}, {2, true}, {1, false}});
  }
  PucOptions options{.eps = 0.3, .delta = 0.2, .m1 = 80, .m2 = 20};
  options.sanitizer.noiseless = true;
  Rng rng(13);
  auto r = PrivateUniformConvergence(c, s, options, rng);
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_TRUE(r->sigma);
  for (size_t d = 0; d < c.num_rows(); ++d) {
    double empirical = 0.0;
    for (const auto& [x, y] : s.pairs) empirical += c.at(d, x) != y;
    empirical /= s.pairs.size();
    // Only the counter's noise, of scale 1 / (2 * 80), is left.
    EXPECT_NEAR(r->l_hat[d], empirical, 0.1);
  }
  ASSERT_EQ(r->ledger.entries().size(), 4u);
  EXPECT_EQ(r->ledger.Total(), kLaplaceCounterPrivacy);
}

TEST(PrivateUniformConvergence, LabelImbalance) {
  ConceptClass c = Thresholds(3).value();
  LabeledSample s;
  for (int i = 0; i < 100; ++i) s.pairs.emplace_back(i % 3, i % 5 == 0);
  PucOptions options{.m1 = 20, .m2 = 30};
  options.sanitizer.noiseless = true;
  Rng rng(14);
  auto r = PrivateUniformConvergence(c, s, options, rng);
  ASSERT_EQ(r.status().code(), absl::StatusCode::kFailedPrecondition);
  EXPECT_NE(r.status().message().find("label imbalance beyond guarantee"),
            std::string::npos);
}

TEST(ArgminLowestIndex, BreaksTiesLow) {
  EXPECT_EQ(ArgminLowestIndex({0.3, 0.1, 0.1, 0.2}), 1u);
  EXPECT_EQ(ArgminLowestIndex({0.5, 0.5, 0.5}), 0u);
}

TEST(PapPacFromPuc, PicksZeroLossHypothesis) {
  ConceptClass c = Thresholds(3).value();
  LabeledSample s;
  // Labels follow the threshold x >= 1.
  for (int copy = 0; copy < 30; ++copy) {
    s.pairs.insert(s.pairs.end(), {{0, false}, {1, true}, {2, true}});
  }
  PucOptions options{.m1 = 90, .m2 = 30};
  options.sanitizer.noiseless = true;
  Rng rng(15);
  auto r = PapPacFromPuc(c, s, options, rng);
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_EQ(c.row(r->hypothesis).ToString(), "011");
}

TEST(DrawLabeledSample, FollowsJointLaw) {
  Distribution joint = Distribution::Create({0.5, 0, 0, 0.5}).value();
  Rng rng(16);
  LabeledSample s = DrawLabeledSample(joint, 1000, rng);
  for (const auto& [x, y] : s.pairs) EXPECT_EQ(x == 1, y);
  EXPECT_DOUBLE_EQ(PopulationLoss(joint, Hypothesis::FromString("01").value()),
                   0.0);
  EXPECT_DOUBLE_EQ(PopulationLoss(joint, Hypothesis::FromString("10").value()),
                   1.0);
}

}  // namespace
}  // namespace sdg
