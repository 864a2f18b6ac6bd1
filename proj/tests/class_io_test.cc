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

#include "sdg/class_io.h"

#include "gtest/gtest.h"
#include "sdg/class_zoo.h"

namespace sdg {
namespace {

TEST(ParseClass, ReadsHeaderAndRows) {
  auto c = ParseClass("# two rows\n3 2\n\n101\n010\n");
  ASSERT_TRUE(c.ok()) << c.status();
  EXPECT_EQ(c->num_points(), 3u);
  EXPECT_EQ(c->num_rows(), 2u);
}

TEST(ParseClass, RejectsMalformedInput) {
  EXPECT_FALSE(ParseClass("").ok());
  EXPECT_FALSE(ParseClass("3\n101\n").ok());
  EXPECT_FALSE(ParseClass("3 2\n101\n").ok());
  EXPECT_FALSE(ParseClass("3 1\n10\n").ok());
  EXPECT_FALSE(ParseClass("3 1\n1x1\n").ok());
}

TEST(FormatClass, RoundTrips) {
  ConceptClass c = Thresholds(5).value();
  EXPECT_EQ(ParseClass(FormatClass(c)).value(), c);
}

TEST(ParseWeights, ReadsNumbers) {
  auto w = ParseWeights("0.25 0.5\t0.25\n");
  ASSERT_TRUE(w.ok());
  EXPECT_EQ(w->size(), 3u);
  EXPECT_DOUBLE_EQ((*w)[1], 0.5);
  EXPECT_FALSE(ParseWeights("0.1 abc").ok());
  EXPECT_FALSE(ParseWeights("  ").ok());
}

TEST(LoadClassFile, MissingFileFails) {
  EXPECT_FALSE(LoadClassFile("/nonexistent/class.txt").ok());
}

}  // namespace
}  // namespace sdg
