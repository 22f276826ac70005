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

#include "gqre/oracle.h"

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "gqre/errors.h"
#include "gqre/generators.h"
#include "gqre/payoff.h"
#include "gqre/random.h"
#include "support/oracles.h"

namespace gqre {
namespace {

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

// Sample mean and unbiased variance of raw estimates for (player, action).
Moments SampleRaw(const Game& g, const RegularizerSet& regs,
                  const StrategyProfile& p, int player, int action,
                  std::int64_t plays, int reports, Rng& rng) {
  double sum = 0.0, sum_sq = 0.0;
  for (int r = 0; r < reports; ++r) {
    const OracleReport rep = Simulate(g, p, plays, rng);
    const double x = EstimateGradient(rep, regs, player).raw[action];
    sum += x;
    sum_sq += x * x;
  }
  Moments m;
  m.mean = sum / reports;
  m.variance = (sum_sq - reports * m.mean * m.mean) / (reports - 1);
  return m;
}

TEST(SimulateTest, PointMassIsDeterministic) {
  Rng rng(1);
  const Game g = testing::RandomGame({2, 3}, rng);
  StrategyProfile p;
  p.distributions = {Eigen::Vector2d(0, 1), Eigen::Vector3d(0, 0, 1)};
  const OracleReport rep = Simulate(g, p, 250, rng);
  EXPECT_EQ(rep.counts[0], (std::vector<std::int64_t>{0, 250}));
  EXPECT_EQ(rep.counts[1], (std::vector<std::int64_t>{0, 0, 250}));
  const std::size_t flat = g.FlatIndex({1, 2});
  EXPECT_NEAR(rep.cumulative_payoff[0][1], 250 * g.utilities[0][flat], 1e-12);
  EXPECT_NEAR(rep.cumulative_payoff[1][2], 250 * g.utilities[1][flat], 1e-12);
  EXPECT_EQ(rep.cumulative_payoff[0][0], 0.0);
}

TEST(SimulateTest, SinglePlayHasOneCountPerPlayer) {
  Rng rng(2);
  const Game g = testing::RandomGame({3, 2, 2}, rng);
  for (int k = 0; k < 50; ++k) {
    const OracleReport rep =
        Simulate(g, testing::RandomInteriorProfile(g, rng), 1, rng);
    for (const auto& c : rep.counts) {
      EXPECT_EQ(std::count(c.begin(), c.end(), 1), 1);
      EXPECT_EQ(std::accumulate(c.begin(), c.end(), std::int64_t{0}), 1);
    }
  }
}

TEST(SimulateTest, ConservationAndPayoffBounds) {
  Rng rng(3);
  const Game g = testing::RandomGame({4, 3}, rng);
  for (int k = 0; k < 20; ++k) {
    const std::int64_t m = 1 + static_cast<std::int64_t>(rng.NextU64() % 500);
    const OracleReport rep =
        Simulate(g, testing::RandomInteriorProfile(g, rng, 0.0), m, rng);
    for (int i = 0; i < 2; ++i) {
      EXPECT_EQ(std::accumulate(rep.counts[i].begin(), rep.counts[i].end(),
                                std::int64_t{0}),
                m);
      for (int a = 0; a < g.action_counts[i]; ++a) {
        EXPECT_GE(rep.cumulative_payoff[i][a], 0.0);
        EXPECT_LE(rep.cumulative_payoff[i][a],
                  static_cast<double>(rep.counts[i][a]) + 1e-9);
        if (rep.counts[i][a] == 0) EXPECT_EQ(rep.cumulative_payoff[i][a], 0.0);
      }
    }
  }
}

TEST(SimulateTest, ZeroProbabilityActionsAreNeverPlayed) {
  Rng rng(4);
  const Game g = testing::RandomGame({4, 2}, rng);
  StrategyProfile p;
  p.distributions = {Eigen::Vector4d(0.0, 0.5, 0.0, 0.5),
                     Eigen::Vector2d(1.0, 0.0)};
  const OracleReport rep = Simulate(g, p, 10000, rng);
  EXPECT_EQ(rep.counts[0][0], 0);
  EXPECT_EQ(rep.counts[0][2], 0);
  EXPECT_EQ(rep.counts[1][1], 0);
}

TEST(SimulateTest, SameSeedSameReport) {
  const Game g = MatchingPennies();
  Rng a(42), b(42);
  const OracleReport ra = Simulate(g, UniformProfile(g), 1000, a);
  const OracleReport rb = Simulate(g, UniformProfile(g), 1000, b);
  EXPECT_EQ(ra.counts, rb.counts);
  EXPECT_EQ(ra.cumulative_payoff[0], rb.cumulative_payoff[0]);
  EXPECT_THROW(Simulate(g, UniformProfile(g), 0, a), ValidationError);
}

TEST(EstimateGradientTest, ConstantUtilityIsUnbiased) {
  Game g;
  g.action_counts = {2, 2};
  g.utilities = {std::vector<double>(4, 1.0), std::vector<double>(4, 1.0)};
  const RegularizerSet regs = {Regularizer::Entropy(1), Regularizer::Entropy(1)};
  const StrategyProfile p = UniformProfile(g);
  Rng rng(5);
  const int reports = 100000;
  for (int a = 0; a < 2; ++a) {
    const Moments m = SampleRaw(g, regs, p, 0, a, 100, reports, rng);
    const double se =
        std::sqrt(TheoreticalVariance(g, p, 0, a, 1.0, 100) / reports);
    EXPECT_LE(std::abs(m.mean - 1.0), 3 * se);
  }
}

TEST(EstimateGradientTest, ZeroLambdaGivesMinusRegularizerGradient) {
  Rng rng(6);
  const Game g = testing::RandomGame({3, 2}, rng);
  const StrategyProfile p = testing::RandomInteriorProfile(g, rng);
  const RegularizerSet regs = {Regularizer::Entropy(0), Regularizer::Entropy(0)};
  const OracleReport rep = Simulate(g, p, 50, rng);
  const GradientEstimate est = EstimateGradient(rep, regs, 0, 3);
  EXPECT_EQ(est.raw, Eigen::VectorXd::Zero(3));
  EXPECT_EQ(est.field, -RegGradient(regs[0], p.distributions[0]));
  EXPECT_EQ(est.iteration, 3);
  EXPECT_EQ(est.plays, 50);
}

TEST(EstimateGradientTest, FieldIsRawMinusRegularizerGradient) {
  Rng rng(7);
  const Game g = testing::RandomGame({3, 3}, rng);
  const StrategyProfile p = testing::RandomInteriorProfile(g, rng);
  const RegularizerSet regs = {Regularizer::Hellinger(2),
                               Regularizer::SquaredMean(0.5)};
  const OracleReport rep = Simulate(g, p, 100, rng);
  for (int i = 0; i < 2; ++i) {
    const GradientEstimate est = EstimateGradient(rep, regs, i);
    EXPECT_EQ(est.field, est.raw - RegGradient(regs[i], p.distributions[i]));
  }
}

TEST(EstimateGradientTest, ZeroProbabilityWithPositiveLambdaThrows) {
  const Game g = MatchingPennies();
  StrategyProfile p;
  p.distributions = {Eigen::Vector2d(1, 0), Eigen::Vector2d(0.5, 0.5)};
  Rng rng(8);
  const OracleReport rep = Simulate(g, p, 10, rng);
  const RegularizerSet regs = {Regularizer::SquaredMean(1),
                               Regularizer::SquaredMean(1)};
  EXPECT_THROW(EstimateGradient(rep, regs, 0), SingularityError);
  EXPECT_NO_THROW(EstimateGradient(rep, regs, 1));
}

TEST(EstimateGradientTest, LargeSampleApproachesExactGradient) {
  Rng rng(9);
  const Game g = testing::RandomGame({2, 2}, rng);
  const StrategyProfile p = testing::RandomInteriorProfile(g, rng, 0.1);
  const RegularizerSet regs = {Regularizer::Entropy(1.5),
                               Regularizer::Entropy(0.5)};
  const OracleReport rep = Simulate(g, p, 1000000, rng);
  for (int i = 0; i < 2; ++i) {
    const Eigen::VectorXd exact =
        regs[i].lambda * ActionUtilities(g, p, i);
    EXPECT_LE((EstimateGradient(rep, regs, i).raw - exact).cwiseAbs().maxCoeff(),
              1e-2);
  }
}

TEST(TheoreticalVarianceTest, DegenerateCases) {
  Rng rng(10);
  const Game g = testing::RandomGame({2, 2}, rng);
  StrategyProfile pure;
  pure.distributions = {Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)};
  EXPECT_NEAR(TheoreticalVariance(g, pure, 0, 0, 1.0, 10), 0.0, 1e-15);
  EXPECT_EQ(TheoreticalVariance(g, UniformProfile(g), 0, 0, 0.0, 10), 0.0);
  EXPECT_THROW(TheoreticalVariance(g, pure, 0, 1, 1.0, 10), SingularityError);
}

TEST(TheoreticalVarianceTest, PenniesMatchesMonteCarlo) {
  const Game g = MatchingPennies();
  const StrategyProfile p = UniformProfile(g);
  const RegularizerSet regs = {Regularizer::Entropy(1), Regularizer::Entropy(1)};
  Rng rng(11);
  const int reports = 100000;
  const Moments m = SampleRaw(g, regs, p, 0, 0, 100, reports, rng);
  const double var = TheoreticalVariance(g, p, 0, 0, 1.0, 100);
  // E[u^2 | heads] - pi(heads) u(heads)^2 = 0.5 - 0.5 * 0.25.
  EXPECT_NEAR(var, 0.375 / 50.0, 1e-15);
  EXPECT_LE(std::abs(m.variance / var - 1.0), 0.05);
  EXPECT_LE(std::abs(m.mean - 0.5), 3 * std::sqrt(var / reports));
}

TEST(OracleDependenceTest, PlayersShareTheSamePlays) {
  const Game g = MatchingPennies();
  const StrategyProfile p = UniformProfile(g);
  const RegularizerSet regs = {Regularizer::Entropy(1), Regularizer::Entropy(1)};
  Rng rng(12);
  const int reports = 100000;
  double sx = 0, sy = 0, sxy = 0;
  for (int r = 0; r < reports; ++r) {
    const OracleReport rep = Simulate(g, p, 100, rng);
    const double x = EstimateGradient(rep, regs, 0).raw[0];
    const double y = EstimateGradient(rep, regs, 1).raw[0];
    sx += x;
    sy += y;
    sxy += x * y;
  }
  const double cov = sxy / reports - (sx / reports) * (sy / reports);
  // Under independence the covariance estimate has standard error
  // sigma_x sigma_y / sqrt(R).
  const double sigma = TheoreticalVariance(g, p, 0, 0, 1.0, 100);
  const double se = sigma / std::sqrt(static_cast<double>(reports));
  EXPECT_GT(std::abs(cov), 3 * se);
  // Multinomial covariance of #(H,H) and #(T,H): -M/16, scaled by 1/(M/2)^2.
  EXPECT_NEAR(cov, -1.0 / 400.0, 6 * se);
}

TEST(ReportJsonTest, ContainsTables) {
  const Game g = MatchingPennies();
  Rng rng(13);
  const OracleReport rep = Simulate(g, UniformProfile(g), 10, rng);
  const auto doc = nlohmann::json::parse(ReportToJsonLine(rep, 4));
  EXPECT_EQ(doc["iteration"], 4);
  EXPECT_EQ(doc["plays"], 10);
  EXPECT_EQ(doc["players"].size(), 2u);
  EXPECT_EQ(doc["players"][0]["counts"].size(), 2u);
}

}  // namespace
}  // namespace gqre
