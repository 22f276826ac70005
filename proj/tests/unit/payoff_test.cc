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

#include "gqre/payoff.h"

#include <cmath>

#include <gtest/gtest.h>

#include "gqre/errors.h"
#include "gqre/generators.h"
#include "gqre/random.h"
#include "support/oracles.h"

namespace gqre {
namespace {

double PerturbedUtility(const Game& g, const RegularizerSet& regs,
                        const StrategyProfile& p, int i) {
  return regs[i].lambda * ExpectedUtility(g, p, i) -
         RegValue(regs[i], p.distributions[i]);
}

TEST(PayoffGradientTest, TwoPlayerBilinearPart) {
  Rng rng(1);
  const Game g = testing::RandomGame({3, 2}, rng);
  const StrategyProfile p = testing::RandomInteriorProfile(g, rng);
  const RegularizerSet regs = {Regularizer::SquaredMean(0.7),
                               Regularizer::Entropy(1.0)};
  Eigen::MatrixXd a(3, 2);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 2; ++c) a(r, c) = g.utilities[0][r * 2 + c];
  }
  const Eigen::VectorXd grad = PayoffGradient(g, regs, p, 0);
  const Eigen::VectorXd expected =
      0.7 * a * p.distributions[1] - RegGradient(regs[0], p.distributions[0]);
  EXPECT_LE((grad - expected).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(PayoffGradientTest, EntropyWithZeroLambdaAtUniform) {
  Rng rng(2);
  const Game g = testing::RandomGame({4, 2}, rng);
  const RegularizerSet regs = {Regularizer::Entropy(0.0),
                               Regularizer::Entropy(0.0)};
  const Eigen::VectorXd grad = PayoffGradient(g, regs, UniformProfile(g), 0);
  for (int a = 0; a < 4; ++a) {
    EXPECT_NEAR(grad[a], -(1.0 + std::log(0.25)) - std::log(4.0), 1e-15);
  }
}

TEST(PayoffGradientTest, MatchesFiniteDifferencesThreePlayers) {
  Rng rng(3);
  const Game g = testing::RandomGame({2, 3, 2}, rng);
  const RegularizerSet regs = {Regularizer::Entropy(1.3),
                               Regularizer::Hellinger(0.8),
                               Regularizer::Renyi(2.0, 0.4)};
  for (int rep = 0; rep < 20; ++rep) {
    const StrategyProfile p = testing::RandomInteriorProfile(g, rng, 0.05);
    for (int i = 0; i < 3; ++i) {
      const Eigen::VectorXd fd = testing::FiniteDifferenceGradient(
          [&](const Eigen::VectorXd& x) {
            StrategyProfile q = p;
            q.distributions[i] = x;
            return PerturbedUtility(g, regs, q, i);
          },
          p.distributions[i], 1e-5);
      const Eigen::VectorXd grad = PayoffGradient(g, regs, p, i);
      EXPECT_LE((grad - fd).cwiseAbs().maxCoeff(),
                1e-6 * std::max(1.0, grad.cwiseAbs().maxCoeff()));
    }
  }
}

TEST(PayoffGradientTest, BoundaryThrowsForSingularRegularizer) {
  const Game g = MatchingPennies();
  StrategyProfile p;
  p.distributions = {Eigen::Vector2d(1, 0), Eigen::Vector2d(0.5, 0.5)};
  EXPECT_THROW(PayoffGradient(g, {Regularizer::Entropy(1),
                                  Regularizer::Entropy(1)},
                              p, 0),
               SingularityError);
  EXPECT_NO_THROW(PayoffGradient(
      g, {Regularizer::SquaredMean(1), Regularizer::Entropy(1)}, p, 0));
  EXPECT_THROW(PayoffGradient(g, {Regularizer::Entropy(1)}, p, 0),
               DimensionError);
}

TEST(GameJacobianTest, TwoPlayerEntropyClosedForm) {
  Rng rng(4);
  const Game g = testing::RandomGame({2, 3}, rng);
  const StrategyProfile p = testing::RandomInteriorProfile(g, rng);
  const RegularizerSet regs = {Regularizer::Entropy(1),
                               Regularizer::Entropy(1)};
  Eigen::MatrixXd a(2, 3), b(2, 3);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 3; ++c) {
      a(r, c) = g.utilities[0][r * 3 + c];
      b(r, c) = g.utilities[1][r * 3 + c];
    }
  }
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(5, 5);
  expected.block(0, 0, 2, 2) = -Eigen::MatrixXd(
      p.distributions[0].cwiseInverse().asDiagonal());
  expected.block(2, 2, 3, 3) = -Eigen::MatrixXd(
      p.distributions[1].cwiseInverse().asDiagonal());
  expected.block(0, 2, 2, 3) = a;
  expected.block(2, 0, 3, 2) = b.transpose();
  EXPECT_LE((GameJacobian(g, regs, p) - expected).cwiseAbs().maxCoeff(),
            1e-14);
}

TEST(GameJacobianTest, OnePlayerIsNegativeRegularizerHessian) {
  Game g;
  g.action_counts = {3};
  g.utilities = {{0.0, 0.5, 1.0}};
  StrategyProfile p;
  p.distributions = {Eigen::Vector3d(0.2, 0.3, 0.5)};
  const RegularizerSet regs = {Regularizer::Hellinger(2.0)};
  const Eigen::MatrixXd h = GameJacobian(g, regs, p);
  EXPECT_EQ(h, -RegHessian(regs[0], p.distributions[0]));
  EXPECT_TRUE(CheckDiagonalDominance(g, regs, {p}).all_negative_definite);
}

TEST(GameJacobianTest, MatchesFiniteDifferencesOfStackedField) {
  Rng rng(5);
  const Game g = testing::RandomGame({2, 2, 2}, rng);
  const RegularizerSet regs = {Regularizer::Entropy(1.1),
                               Regularizer::Renyi(0.9, 0.5),
                               Regularizer::SquaredMean(1.7)};
  for (int rep = 0; rep < 20; ++rep) {
    const StrategyProfile p = testing::RandomInteriorProfile(g, rng, 0.05);
    const Eigen::MatrixXd fd = testing::FiniteDifferenceJacobian(
        [&](const Eigen::VectorXd& x) {
          const StrategyProfile q =
              StrategyProfile::FromStacked(x, g.action_counts);
          Eigen::VectorXd out(x.size());
          for (int i = 0; i < 3; ++i) {
            out.segment(q.offset(i), 2) = PayoffGradient(g, regs, q, i);
          }
          return out;
        },
        p.Stacked(), 1e-5);
    const Eigen::MatrixXd h = GameJacobian(g, regs, p);
    EXPECT_LE((h - fd).cwiseAbs().maxCoeff(),
              1e-5 * std::max(1.0, h.cwiseAbs().maxCoeff()));
  }
}

TEST(DiagonalDominanceTest, MonotoneGameWithHalfRationality) {
  Rng rng(7);
  const Game g = StronglyMonotone(10, 1.0, 0.3, rng);
  const RegularizerSet regs = {Regularizer::Entropy(0.5),
                               Regularizer::Entropy(0.5)};
  std::vector<StrategyProfile> profiles;
  while (profiles.size() < 100) {
    StrategyProfile p = testing::RandomInteriorProfile(g, rng, 1e-3);
    if (p.distributions[0].maxCoeff() <= 0.9 &&
        p.distributions[1].maxCoeff() <= 0.9) {
      profiles.push_back(std::move(p));
    }
  }
  const DominanceReport report = CheckDiagonalDominance(g, regs, profiles);
  EXPECT_TRUE(report.all_negative_definite);
  ASSERT_EQ(report.max_eigenvalues.size(), 100u);
  for (double e : report.max_eigenvalues) EXPECT_LT(e, 0.0);
}

TEST(DiagonalDominanceTest, ZeroLambdaIsAlwaysNegativeDefinite) {
  Rng rng(8);
  const Game g = testing::RandomGame({3, 4}, rng);
  const RegularizerSet regs = {Regularizer::Entropy(0.0),
                               Regularizer::Hellinger(0.0)};
  std::vector<StrategyProfile> profiles;
  for (int k = 0; k < 20; ++k) {
    profiles.push_back(testing::RandomInteriorProfile(g, rng));
  }
  EXPECT_TRUE(CheckDiagonalDominance(g, regs, profiles).all_negative_definite);
}

TEST(DiagonalDominanceTest, ZeroRegularizerIsNotNegativeDefinite) {
  const Game g = MatchingPennies();
  // Total variation has a zero Hessian, so f contributes nothing.
  const RegularizerSet regs = {Regularizer::TotalVariation(1.0),
                               Regularizer::TotalVariation(1.0)};
  const DominanceReport report =
      CheckDiagonalDominance(g, regs, {UniformProfile(g)});
  EXPECT_FALSE(report.all_negative_definite);
  EXPECT_GE(report.max_eigenvalues[0], 0.0);
}

}  // namespace
}  // namespace gqre
