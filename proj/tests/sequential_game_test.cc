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

#include "sdg/sequential_game.h"

#include <cmath>

#include "gtest/gtest.h"
#include "sdg/class_zoo.h"
#include "sdg/random.h"

namespace sdg {
namespace {

// Always names row 0, valid or not.
class StubbornDiscriminator final : public Discriminator {
 public:
  DiscriminatorReply Respond(const Distribution&) override {
    return DiscriminatorReply::Distinguish(0);
  }
};

class AlwaysWin final : public Discriminator {
 public:
  DiscriminatorReply Respond(const Distribution&) override {
    return DiscriminatorReply::Win();
  }
};

TEST(FoolingHorizon, Formula) {
  EXPECT_EQ(FoolingHorizon(0.5, 0), 1u);
  // a = 16, ceil(16 ln 16) = 45.
  EXPECT_EQ(FoolingHorizon(0.5, 1), 45u);
  const double a = 4.0 * 3 / 0.04;
  EXPECT_EQ(FoolingHorizon(0.2, 3),
            static_cast<size_t>(std::ceil(a * std::log(a))));
}

TEST(FoolingParams, ComputesDualDimension) {
  ConceptClass c = Symmetrize(Thresholds(3).value());
  auto p = FoolingParams::Create(c, 0.3);
  ASSERT_TRUE(p.ok());
  EXPECT_EQ(p->horizon, FoolingHorizon(0.3, p->dual_ldim));
  EXPECT_FALSE(FoolingParams::Create(0.0, 1).ok());
  EXPECT_FALSE(FoolingParams::Create(0.3, -1).ok());
}

TEST(HonestDiscriminator, LowestDistinguisher) {
  // Rows 001 010 011 100 101 110.
  ConceptClass c = Symmetrize(Singletons(3).value());
  HonestDiscriminator d(c, Distribution::Dirac(3, 0), 0.3);
  DiscriminatorReply r = d.Respond(Distribution::Uniform(3));
  ASSERT_FALSE(r.win);
  EXPECT_EQ(c.row(r.distinguisher).ToString(), "100");
  EXPECT_TRUE(d.Respond(Distribution::Dirac(3, 0)).win);
}

TEST(PlayGame, MwBeatsHonestDiscriminator) {
  ConceptClass c = Symmetrize(Thresholds(5).value());
  auto params = FoolingParams::Create(c, 0.3).value();
  Distribution target = Distribution::Create({1, 0, 3, 0, 2}).value();
  auto generator = MakeFoolingGenerator(c, params, LearnerKind::kMw).value();
  HonestDiscriminator disc(c, target, 0.3);
  auto t = PlayGame(c, *generator, disc,
                    {.max_rounds = params.horizon,
                     .eps = 0.3,
                     .reference_target = target,
                     .bound = params.horizon});
  ASSERT_TRUE(t.ok()) << t.status();
  EXPECT_EQ(t->outcome, Outcome::kWon);
  EXPECT_LE(t->won_round, params.horizon);
  EXPECT_LE(t->final_ipm, 0.3 + kWinTolerance);
  EXPECT_FALSE(t->dishonest_win);
  for (const auto& r : t->rounds) EXPECT_TRUE(r.reply_valid);
}

TEST(PlayGame, AgnosticSoaBeatsHonestDiscriminator) {
  ConceptClass c = Symmetrize(Thresholds(3).value());
  auto params = FoolingParams::Create(c, 0.4).value();
  Distribution target = Distribution::Create({0.6, 0.1, 0.3}).value();
  auto generator =
      MakeFoolingGenerator(c, params, LearnerKind::kAgnosticSoa).value();
  HonestDiscriminator disc(c, target, 0.4);
  auto t = PlayGame(c, *generator, disc,
                    {.max_rounds = params.horizon,
                     .eps = 0.4,
                     .reference_target = target,
                     .bound = params.horizon});
  ASSERT_TRUE(t.ok()) << t.status();
  EXPECT_EQ(t->outcome, Outcome::kWon);
}

TEST(PlayGame, HalfArcsUniformWinsImmediately) {
  ConceptClass c = HalfArcs(8).value();
  auto params = FoolingParams::Create(c, 0.5).value();
  auto generator = MakeFoolingGenerator(c, params, LearnerKind::kMw).value();
  HonestDiscriminator disc(c, Distribution::Dirac(8, 3), 0.5);
  auto t = PlayGame(c, *generator, disc,
                    {.max_rounds = params.horizon, .eps = 0.5});
  ASSERT_TRUE(t.ok());
  EXPECT_EQ(t->won_round, 1u);
}

TEST(PlayGame, StrictValidationRejectsFalseDistinguisher) {
  ConceptClass c = Symmetrize(Thresholds(3).value());
  auto params = FoolingParams::Create(c, 0.3).value();
  auto generator = MakeFoolingGenerator(c, params, LearnerKind::kMw).value();
  StubbornDiscriminator disc;
  auto t = PlayGame(c, *generator, disc,
                    {.max_rounds = 5,
                     .eps = 0.3,
                     .reference_target = Distribution::Uniform(3)});
  EXPECT_EQ(t.status().code(), absl::StatusCode::kFailedPrecondition);

  auto generator2 = MakeFoolingGenerator(c, params, LearnerKind::kMw).value();
  auto recorded = PlayGame(c, *generator2, disc,
                           {.max_rounds = 5,
                            .eps = 0.3,
                            .reference_target = Distribution::Uniform(3),
                            .validation = Validation::kRecord});
  ASSERT_TRUE(recorded.ok());
  EXPECT_EQ(recorded->outcome, Outcome::kLost);
  EXPECT_EQ(recorded->rounds.size(), 5u);
  EXPECT_FALSE(recorded->rounds[0].reply_valid);
}

TEST(PlayGame, FlagsDishonestWin) {
  ConceptClass c = Symmetrize(Thresholds(3).value());
  auto params = FoolingParams::Create(c, 0.2).value();
  auto generator = MakeFoolingGenerator(c, params, LearnerKind::kMw).value();
  AlwaysWin disc;
  auto t = PlayGame(c, *generator, disc,
                    {.max_rounds = 5,
                     .eps = 0.2,
                     .reference_target = Distribution::Dirac(3, 0)});
  ASSERT_TRUE(t.ok());
  EXPECT_EQ(t->outcome, Outcome::kWon);
  EXPECT_TRUE(t->dishonest_win);
}

TEST(PlayGame, RejectsAsymmetricClass) {
  ConceptClass c = Thresholds(3).value();
  auto params = FoolingParams::Create(0.3, 1).value();
  EXPECT_FALSE(MakeFoolingGenerator(c, params, LearnerKind::kMw).ok());
}

TEST(TreeAdversary, ServesValidDistinguishersAlongThePath) {
  ConceptClass c = Cube(3).value();
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    auto adv = TreeAdversary::Create(c, 0.4, rng).value();
    EXPECT_EQ(adv->depth(), DualLittlestoneDimension(c).value());
    for (const auto& [row, label] : adv->path()) {
      EXPECT_EQ(c.at(row, adv->leaf_point()), label);
    }
    auto params = FoolingParams::Create(c, 0.4).value();
    auto generator =
        MakeFoolingGenerator(c, params, LearnerKind::kMw).value();
    auto t = PlayGame(c, *generator, *adv,
                      {.max_rounds = params.horizon,
                       .eps = 0.4,
                       .reference_target = adv->target()});
    ASSERT_TRUE(t.ok()) << t.status();
    EXPECT_EQ(t->outcome, Outcome::kWon);
    EXPECT_EQ(t->rounds.size(), adv->served() + 1);
  }
}

}  // namespace
}  // namespace sdg
