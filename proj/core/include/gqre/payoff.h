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

#ifndef GQRE_PAYOFF_H_
#define GQRE_PAYOFF_H_

#include <vector>

#include <Eigen/Dense>

#include "gqre/game.h"
#include "gqre/regularizers.h"

namespace gqre {

// Gradient of the perturbed utility lambda_i u_i(pi) - f_i(pi_i) with respect
// to pi_i: lambda_i u_i(a, pi_{-i}) - grad f_i(pi_i)_a. Throws
// SingularityError at boundary points of boundary-singular regularizers.
Eigen::VectorXd PayoffGradient(const Game& game, const RegularizerSet& regs,
                               const StrategyProfile& profile, int player);

// The stacked field F(pi) = (F_1, ..., F_N).
std::vector<Eigen::VectorXd> PayoffGradients(const Game& game,
                                             const RegularizerSet& regs,
                                             const StrategyProfile& profile);

// Jacobian H of the stacked field, sum_i |A_i| square. Diagonal blocks are
// -Hess f_i(pi_i); block (i, j) is lambda_i d^2 u_i / d pi_i d pi_j.
Eigen::MatrixXd GameJacobian(const Game& game, const RegularizerSet& regs,
                             const StrategyProfile& profile);

struct DominanceReport {
  // Largest eigenvalue of H + H^T at each profile.
  std::vector<double> max_eigenvalues;
  bool all_negative_definite = true;
};

DominanceReport CheckDiagonalDominance(
    const Game& game, const RegularizerSet& regs,
    const std::vector<StrategyProfile>& profiles);

// Throws DimensionError unless there is one regularizer per player, then
// validates each against its player's action count.
void ValidateRegularizerSet(const Game& game, const RegularizerSet& regs);

}  // namespace gqre

#endif  // GQRE_PAYOFF_H_
