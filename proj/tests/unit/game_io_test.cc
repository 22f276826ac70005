// Copyright 2026 The GQRE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gqre/game_io.h"

#include <gtest/gtest.h>

#include "gqre/errors.h"
#include "gqre/generators.h"
#include "gqre/random.h"

namespace gqre {
namespace {

TEST(GameIoTest, RoundTripKeepsEverything) {
  Rng rng(7);
  const Game g = StronglyMonotone(5, 1.0, 0.3, rng);
  const std::string text = SerializeGame(g);
  const Game back = ParseGame(text);
  EXPECT_EQ(back.action_counts, g.action_counts);
  EXPECT_EQ(back.utilities, g.utilities);
  EXPECT_EQ(back.normalized, g.normalized);
  EXPECT_EQ(back.metadata.generator, "monotone");
  EXPECT_EQ(back.metadata.seed, g.metadata.seed);
  EXPECT_EQ(back.metadata.mu, g.metadata.mu);
  EXPECT_EQ(back.metadata.skew, g.metadata.skew);
  EXPECT_FALSE(back.metadata.k.has_value());
  EXPECT_EQ(back.metadata.pre_normalization, g.metadata.pre_normalization);
  EXPECT_EQ(SerializeGame(back), text);
}

TEST(GameIoTest, DocumentShape) {
  const std::string text = SerializeGame(MatchingPennies());
  EXPECT_NE(text.find("\"players\": 2"), std::string::npos);
  EXPECT_NE(text.find("\"generator\": \"matching-pennies\""),
            std::string::npos);
}

TEST(GameIoTest, MinimalDocumentAndErrors) {
  const Game g = ParseGame(
      R"({"action_counts": [2], "utilities": [[0.25, 1.0]]})");
  EXPECT_EQ(g.metadata.generator, "custom");
  EXPECT_FALSE(g.normalized);
  EXPECT_THROW(ParseGame("{"), ValidationError);
  EXPECT_THROW(ParseGame(R"({"action_counts": [2, 2], "utilities": [[1]]})"),
               DimensionError);
  EXPECT_THROW(ParseGame(R"({"players": 3, "action_counts": [1],
                             "utilities": [[1]]})"),
               ValidationError);
}

TEST(ProfileIoTest, RoundTripAndBareArrays) {
  StrategyProfile p;
  p.distributions = {Eigen::Vector2d(0.25, 0.75), Eigen::Vector3d(0.1, 0.2, 0.7)};
  p.floor = 0.05;
  const StrategyProfile back = ParseProfile(SerializeProfile(p));
  EXPECT_EQ(back.distributions[0], p.distributions[0]);
  EXPECT_EQ(back.distributions[1], p.distributions[1]);
  EXPECT_EQ(back.floor, 0.05);
  const StrategyProfile bare = ParseProfile("[[1, 0], [0.5, 0.5]]");
  EXPECT_EQ(bare.distributions[1], Eigen::Vector2d(0.5, 0.5));
  EXPECT_THROW(ParseProfile(R"({"distributions": 3})"), ValidationError);
}

TEST(FileIoTest, MissingFile) {
  EXPECT_THROW(ReadTextFile("/nonexistent/game.json"), ValidationError);
}

}  // namespace
}  // namespace gqre
