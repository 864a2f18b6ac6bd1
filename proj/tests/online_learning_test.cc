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

#include <cmath>

#include "gtest/gtest.h"
#include "oracles.h"
#include "sdg/class_zoo.h"
#include "sdg/dimensions.h"
#include "sdg/random.h"

namespace sdg {
namespace {

// Adversarial Dirac stream: a random row labelled against the rounded
// prediction.
DistExample Adversarial(const Predictor& f, size_t num_rows, Rng& rng) {
  const size_t d = rng.UniformIndex(num_rows);
  return DistExample::Dirac(d, f.values[d] < 0.5);
}

TEST(DistExample, Validation) {
  EXPECT_TRUE(ValidateDistExample(DistExample::Dirac(1, true), 2).ok());
  EXPECT_FALSE(ValidateDistExample(DistExample::Dirac(2, true), 2).ok());
  DistExample bad{.support = {{0, 0.5}, {1, 0.4}}, .label = false};
  EXPECT_FALSE(ValidateDistExample(bad, 2).ok());
  EXPECT_FALSE(ValidateDistExample(DistExample{}, 2).ok());
}

TEST(Predictor, EvaluatesMixtures) {
  Predictor f{.values = {0.2, 0.8}};
  DistExample ex{.support = {{0, 0.5}, {1, 0.5}}, .label = true};
  EXPECT_DOUBLE_EQ(f.Evaluate(ex), 0.5);
  EXPECT_DOUBLE_EQ(f.Loss(ex), 0.5);
}

TEST(MwLearner, StartsUniformAndIsProper) {
  ConceptClass c = Thresholds(4).value();
  auto mw = MakeMwLearner(c, 10).value();
  Predictor f = mw->Predict().value();
  auto p = mw->ProperMixture();
  ASSERT_TRUE(p.has_value());
  for (size_t d = 0; d < c.num_rows(); ++d) {
    EXPECT_DOUBLE_EQ(f.values[d], c.row(d).CountOnes() / 4.0);
    EXPECT_DOUBLE_EQ(f.values[d], p->Expect(c.row(d)));
  }
  EXPECT_DOUBLE_EQ(mw->eta(), std::sqrt(8 * std::log(4.0) / 10));
}

TEST(MwLearner, OneUpdateMatchesClosedForm) {
  ConceptClass c = Thresholds(3).value();
  auto mw = MakeMwLearner(c, 5).value();
  // Row 1 is 001: points 0 and 1 disagree with label 1.
  ASSERT_TRUE(mw->Update(DistExample::Dirac(1, true)).ok());
  const double eta = mw->eta();
  const double z = 2 * std::exp(-eta) + 1;
  auto p = mw->ProperMixture().value();
  EXPECT_NEAR(p[0], std::exp(-eta) / z, 1e-15);
  EXPECT_NEAR(p[2], 1 / z, 1e-15);
  EXPECT_EQ(mw->round(), 1u);
  EXPECT_EQ(mw->ledger().losses.size(), 1u);
  EXPECT_DOUBLE_EQ(mw->ledger().losses[0], 1.0 - 1.0 / 3.0);
}

TEST(MwLearner, StopsAtHorizon) {
  auto mw = MakeMwLearner(Thresholds(2).value(), 1).value();
  ASSERT_TRUE(mw->Update(DistExample::Dirac(0, true)).ok());
  EXPECT_FALSE(mw->Predict().ok());
  EXPECT_FALSE(mw->Update(DistExample::Dirac(0, true)).ok());
}

TEST(MwLearner, RegretWithinHedgeBound) {
  ConceptClass c = Symmetrize(RandomClass(6, 10, 3).value());
  const size_t horizon = 200;
  auto mw = MakeMwLearner(c, horizon).value();
  Rng rng(9);
  for (size_t t = 0; t < horizon; ++t) {
    Predictor f = mw->Predict().value();
    ASSERT_TRUE(mw->Update(Adversarial(f, c.num_rows(), rng)).ok());
  }
  EXPECT_LE(RegretOf(mw->ledger(), c),
            std::sqrt(horizon * std::log(6.0) / 2) + 1);
}

TEST(RegretOf, UsesBestFixedPoint) {
  ConceptClass c = Thresholds(1).value();  // rows 0, 1 over one point
  RegretLedger ledger;
  ledger.examples = {DistExample::Dirac(1, true), DistExample::Dirac(1, true)};
  ledger.losses = {0.5, 0.25};
  EXPECT_DOUBLE_EQ(RegretOf(ledger, c), 0.75);
}

TEST(ExpertCount, SumsBinomials) {
  EXPECT_NEAR(ExpertCount(10, 0), 1.0, 1e-9);
  EXPECT_NEAR(ExpertCount(10, 2), 56.0, 1e-9);
  EXPECT_NEAR(ExpertCount(3, 5), 8.0, 1e-9);
}

TEST(SoaRule, MatchesLdimComparison) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    ConceptClass h = RandomClass(4, 3 + seed, seed).value();
    Predictor s = SoaRule(h).value();
    const testing::Table t = testing::ToTable(h);
    const int full = testing::ExhaustiveLdim(t, 4);
    for (size_t w = 0; w < 4; ++w) {
      const int zero = testing::ExhaustiveLdim(testing::Filter(t, w, 0), 4);
      EXPECT_EQ(s.values[w], zero == full ? 0.0 : 1.0);
    }
  }
}

TEST(SoaPredictions, EmptyVersionSpacePredictsZero) {
  ConceptClass h = Cube(2).value();
  LittlestoneOracle oracle(h);
  std::vector<uint8_t> p = SoaPredictions(oracle, RowSet(h.num_rows()));
  EXPECT_EQ(p, std::vector<uint8_t>(2, 0));
}

TEST(RealizableSoa, MistakesBoundedByLdim) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    ConceptClass h = RandomClass(6, 5 + 2 * seed, seed).value();
    const int ldim = LittlestoneDimension(h).value();
    Rng rng(seed);
    const size_t target = rng.UniformIndex(h.num_rows());
    RealizableSoa soa(h);
    for (int t = 0; t < 60; ++t) {
      const size_t w = rng.UniformIndex(6);
      soa.Update(w, h.at(target, w));
    }
    EXPECT_LE(soa.mistakes(), static_cast<size_t>(ldim)) << seed;
    EXPECT_TRUE(soa.version_space().test(target));
  }
}

TEST(RealizableSoa, AdversaryForcesLdimMistakesOnTree) {
  ConceptClass h = Thresholds(7).value();
  RealizableSoa soa(h);
  // Binary search order forces one mistake per level.
  size_t lo = 0;
  size_t hi = 7;
  while (lo < hi) {
    const size_t mid = (lo + hi) / 2;
    const bool guess = soa.Predict(mid);
    soa.Update(mid, !guess);
    if (guess) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  EXPECT_EQ(soa.mistakes(), 3u);
}

TEST(AgnosticSoa, ZeroDimensionIsExact) {
  // All points share one column, so the dual class has a single row.
  ConceptClass c = ConceptClass::Create(
                       3, {Hypothesis::FromString("000").value(),
                           Hypothesis::FromString("111").value()})
                       .value();
  auto soa = MakeAgnosticSoaLearner(c, 20).value();
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    Predictor f = soa->Predict().value();
    EXPECT_EQ(f.values[0], 0.0);
    EXPECT_EQ(f.values[1], 1.0);
    ASSERT_TRUE(soa->Update(Adversarial(f, 2, rng)).ok());
  }
  EXPECT_NEAR(RegretOf(soa->ledger(), c), 0.0, 1e-12);
}

TEST(AgnosticSoa, RegretWithinBound) {
  ConceptClass c = Thresholds(7).value();
  const int ldim = DualLittlestoneDimension(c).value();
  const size_t horizon = 150;
  auto soa = MakeAgnosticSoaLearner(c, horizon).value();
  Rng rng(4);
  for (size_t t = 0; t < horizon; ++t) {
    Predictor f = soa->Predict().value();
    ASSERT_TRUE(soa->Update(Adversarial(f, c.num_rows(), rng)).ok());
  }
  const double bound = std::sqrt(horizon * std::log(ExpertCount(horizon, ldim)) / 2);
  EXPECT_LE(RegretOf(soa->ledger(), c), bound);
}

TEST(AgnosticSoa, HandlesMixtureExamples) {
  ConceptClass c = Symmetrize(Thresholds(3).value());
  auto soa = MakeAgnosticSoaLearner(c, 10).value();
  DistExample ex{.support = {{0, 0.25}, {3, 0.75}}, .label = false};
  ASSERT_TRUE(soa->Update(ex).ok());
  Predictor f = soa->Predict().value();
  for (double v : f.values) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(AgnosticSoa, CloneIsIndependent) {
  ConceptClass c = Thresholds(3).value();
  auto soa = MakeAgnosticSoaLearner(c, 10).value();
  auto copy = soa->Clone();
  ASSERT_TRUE(soa->Update(DistExample::Dirac(1, true)).ok());
  EXPECT_EQ(copy->round(), 0u);
  EXPECT_EQ(soa->round(), 1u);
}

TEST(AgnosticSoa, RefusesTooManyExperts) {
  AgnosticSoaOptions options;
  options.max_experts = 10;
  auto r = MakeAgnosticSoaLearner(Thresholds(7).value(), 100, options);
  EXPECT_EQ(r.status().code(), absl::StatusCode::kResourceExhausted);
}

}  // namespace
}  // namespace sdg
