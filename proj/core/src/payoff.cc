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

#include <string>

#include <Eigen/Eigenvalues>

#include "gqre/errors.h"

namespace gqre {

void ValidateRegularizerSet(const Game& game, const RegularizerSet& regs) {
  if (static_cast<int>(regs.size()) != game.num_players()) {
    throw DimensionError("expected " + std::to_string(game.num_players()) +
                         " regularizers, got " + std::to_string(regs.size()));
  }
  for (int i = 0; i < game.num_players(); ++i) {
    ValidateRegularizer(regs[i], game.action_counts[i]);
  }
}

Eigen::VectorXd PayoffGradient(const Game& game, const RegularizerSet& regs,
                               const StrategyProfile& profile, int player) {
  if (static_cast<int>(regs.size()) != game.num_players()) {
    throw DimensionError("one regularizer per player is required");
  }
  const Regularizer& reg = regs[player];
  Eigen::VectorXd grad = ActionUtilities(game, profile, player);
  grad *= reg.lambda;
  grad -= RegGradient(reg, profile.distributions[player]);
  return grad;
}

std::vector<Eigen::VectorXd> PayoffGradients(const Game& game,
                                             const RegularizerSet& regs,
                                             const StrategyProfile& profile) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    out.push_back(PayoffGradient(game, regs, profile, i));
  }
  return out;
}

Eigen::MatrixXd GameJacobian(const Game& game, const RegularizerSet& regs,
                             const StrategyProfile& profile) {
  if (static_cast<int>(regs.size()) != game.num_players()) {
    throw DimensionError("one regularizer per player is required");
  }
  const int size = game.total_actions();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(size, size);
  for (int i = 0; i < game.num_players(); ++i) {
    const int row = profile.offset(i);
    const int rows = game.action_counts[i];
    h.block(row, row, rows, rows) =
        -RegHessian(regs[i], profile.distributions[i]);
    for (int j = 0; j < game.num_players(); ++j) {
      if (j == i) continue;
      h.block(row, profile.offset(j), rows, game.action_counts[j]) =
          regs[i].lambda * InteractionBlock(game, profile, i, j);
    }
  }
  return h;
}

DominanceReport CheckDiagonalDominance(
    const Game& game, const RegularizerSet& regs,
    const std::vector<StrategyProfile>& profiles) {
  DominanceReport report;
  for (const StrategyProfile& profile : profiles) {
    const Eigen::MatrixXd h = GameJacobian(game, regs, profile);
    const Eigen::MatrixXd sym = h + h.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        sym, Eigen::EigenvaluesOnly);
    const double top = solver.eigenvalues().maxCoeff();
    report.max_eigenvalues.push_back(top);
    if (!(top < 0.0)) report.all_negative_definite = false;
  }
  return report;
}

}  // namespace gqre
