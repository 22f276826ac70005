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

#ifndef GQRE_ORACLE_H_
#define GQRE_ORACLE_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gqre/game.h"
#include "gqre/random.h"
#include "gqre/regularizers.h"

namespace gqre {

// Per-player tables from M simulated plays of the game: how often each action
// was played and the total payoff collected while playing it.
struct OracleReport {
  std::int64_t plays = 0;
  std::vector<std::vector<std::int64_t>> counts;
  std::vector<Eigen::VectorXd> cumulative_payoff;
  StrategyProfile profile;
};

// Draws `plays` i.i.d. joint actions from the product of the profile's
// marginals (inverse CDF per player and play, players in index order) and
// accumulates the per-player tables.
OracleReport Simulate(const Game& game, const StrategyProfile& profile,
                      std::int64_t plays, Rng& rng);

struct GradientEstimate {
  // lambda_i U_i(a) / (pi_i(a) M), unbiased for lambda_i u_i(a, pi_{-i}).
  Eigen::VectorXd raw;
  // raw - grad f_i(pi_i).
  Eigen::VectorXd field;
  std::int64_t plays = 0;
  int iteration = 0;
};

// Importance-weighted estimate for one player. Actions that were never played
// get raw value 0. Throws SingularityError if lambda_i > 0 and some action has
// zero probability in the submitted profile.
GradientEstimate EstimateGradient(const OracleReport& report,
                                  const RegularizerSet& regs, int player,
                                  int iteration = 0);

std::vector<GradientEstimate> EstimateGradients(const OracleReport& report,
                                                const RegularizerSet& regs,
                                                int iteration = 0);

// Var(raw_i(a)) = lambda^2 (E[u_i^2 | a] - pi_i(a) u_i(a, pi_{-i})^2) /
// (M pi_i(a)).
double TheoreticalVariance(const Game& game, const StrategyProfile& profile,
                           int player, int action, double lambda,
                           std::int64_t plays);

// One JSON object (no trailing newline) describing the report.
std::string ReportToJsonLine(const OracleReport& report, int iteration);

}  // namespace gqre

#endif  // GQRE_ORACLE_H_
