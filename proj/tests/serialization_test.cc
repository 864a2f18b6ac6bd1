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

#include "sdg/serialization.h"

#include <cmath>
#include <limits>

#include "gtest/gtest.h"

namespace sdg {
namespace {

TEST(Serialization, DimensionReport) {
  nlohmann::json j = ToJson(DimensionReport{.vc = 1, .ldim = 3,
                                            .dual_ldim = 2,
                                            .dual_bound_holds = true});
  EXPECT_EQ(j["vc"], 1);
  EXPECT_EQ(j["ldim"], 3);
  EXPECT_EQ(j["dual_ldim"], 2);
  EXPECT_EQ(j["dual_bound_holds"], true);
}

TEST(Serialization, LedgerCarriesProvenance) {
  PrivacyLedger ledger;
  ledger.Add(SubsampledEntry("learner",
                             AtomicEntry("em", {.alpha = 1, .beta = 0}), 10,
                             100));
  nlohmann::json j = ToJson(ledger);
  ASSERT_EQ(j["entries"].size(), 1u);
  const auto& e = j["entries"][0];
  EXPECT_EQ(e["derivation"], "amplified");
  EXPECT_EQ(e["rule"], "subsample");
  EXPECT_EQ(e["u"], 10);
  EXPECT_EQ(e["children"][0]["mechanism"], "em");
  EXPECT_DOUBLE_EQ(j["total"]["alpha"].get<double>(), 0.6);
}

TEST(Serialization, NanBecomesNull) {
  RoundRecord r{.submitted = Distribution::Uniform(2)};
  r.ipm_to_target = std::numeric_limits<double>::quiet_NaN();
  nlohmann::json j = ToJson(r);
  EXPECT_TRUE(j["ipm_to_target"].is_null());
  EXPECT_EQ(j["branch"], "none");
  EXPECT_FALSE(j.contains("distinguisher"));
}

TEST(Serialization, TranscriptRoundTripsThroughText) {
  Transcript t;
  t.outcome = Outcome::kWon;
  t.won_round = 1;
  t.rounds.push_back(RoundRecord{.round = 1,
                                 .submitted = Distribution::Uniform(3)});
  const std::string text = ToJson(t).dump();
  nlohmann::json back = nlohmann::json::parse(text);
  EXPECT_EQ(back["outcome"], "won");
  EXPECT_EQ(back["rounds"][0]["submitted"].size(), 3u);
}

}  // namespace
}  // namespace sdg
