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

#ifndef GQRE_METRICS_H_
#define GQRE_METRICS_H_

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "gqre/game.h"
#include "gqre/regularizers.h"

namespace gqre {

// eta log <pi, exp(g / eta)> - <pi, g>, computed without overflow and without
// cancellation when g is nearly constant on the support of pi.
double SmoothedGapFromGradient(const Eigen::VectorXd& gradient,
                               const Eigen::VectorXd& pi, double eta);

// Per-player smoothed gaps V_i with exact gradients.
std::vector<double> SmoothedGaps(const Game& game, const RegularizerSet& regs,
                                 const StrategyProfile& profile, double eta);
double SmoothedGap(const Game& game, const RegularizerSet& regs,
                   const StrategyProfile& profile, double eta);

// Gradient of V with respect to the stacked profile, in ambient coordinates:
// -F + H^T (s* - pi) + eta exp(F / eta) / <pi, exp(F / eta)>.
Eigen::VectorXd SmoothedGapGradient(const Game& game,
                                    const RegularizerSet& regs,
                                    const StrategyProfile& profile,
                                    double eta);

struct PureVerification {
  bool is_gqre = false;
  // max_a F_i(a) - <pi_i, F_i> per player; +inf where the gradient is
  // unbounded.
  std::vector<double> max_slack;
};

PureVerification VerifyGqrePure(const Game& game, const RegularizerSet& regs,
                                const StrategyProfile& profile,
                                double tol = 1e-6);

struct NashGapResult {
  double epsilon = 0.0;
  std::vector<double> per_player;
};

// eps_i = max_xi u_i^f(xi, pi_{-i}) - u_i^f(pi_i, pi_{-i}), with the best
// response value from the closed-form quantal responses.
NashGapResult NashGap(const Game& game, const RegularizerSet& regs,
                      const StrategyProfile& profile);

struct PlayerGapReport {
  // Empty when the gradient is unbounded at the profile.
  std::optional<double> smoothed_gap;
  double epsilon = 0.0;
  double max_pure_slack = 0.0;
};

struct GapReport {
  std::vector<PlayerGapReport> players;
  std::optional<double> smoothed_gap;
  double epsilon = 0.0;
  bool is_gqre = false;
};

// All of the above at one profile. is_gqre uses the pure-direction test at
// `tol`, except that total variation players are judged by their Nash gap.
GapReport EvaluateGaps(const Game& game, const RegularizerSet& regs,
                       const StrategyProfile& profile, double eta,
                       double tol = 1e-6);

}  // namespace gqre

#endif  // GQRE_METRICS_H_
