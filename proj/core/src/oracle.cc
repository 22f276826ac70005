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

#include <algorithm>
#include <string>

#include <nlohmann/json.hpp>

#include "gqre/errors.h"

namespace gqre {
namespace {

// Cumulative distribution with the last entry pinned to 1 so that every
// uniform draw in [0, 1) lands on some action.
std::vector<double> Cdf(const Eigen::VectorXd& p) {
  std::vector<double> cdf(p.size());
  double total = 0.0;
  for (Eigen::Index a = 0; a < p.size(); ++a) {
    total += p[a];
    cdf[a] = total;
  }
  // Trailing zero-probability actions must stay unreachable.
  Eigen::Index last = p.size() - 1;
  while (last > 0 && p[last] <= 0.0) --last;
  for (Eigen::Index a = last; a < p.size(); ++a) cdf[a] = 1.0;
  return cdf;
}

int Sample(const std::vector<double>& cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return static_cast<int>(it - cdf.begin());
}

}  // namespace

OracleReport Simulate(const Game& game, const StrategyProfile& profile,
                      std::int64_t plays, Rng& rng) {
  ValidateProfileForGame(game, profile);
  if (plays < 1) throw ValidationError("the oracle needs at least one play");
  const int n = game.num_players();
  OracleReport report;
  report.plays = plays;
  report.profile = profile;
  report.counts.resize(n);
  std::vector<std::vector<double>> payoff(n);
  std::vector<std::vector<double>> cdfs(n);
  for (int i = 0; i < n; ++i) {
    report.counts[i].assign(game.action_counts[i], 0);
    payoff[i].assign(game.action_counts[i], 0.0);
    cdfs[i] = Cdf(profile.distributions[i]);
  }
  const std::vector<std::size_t> strides = game.strides();
  std::vector<int> joint(n);
  for (std::int64_t m = 0; m < plays; ++m) {
    std::size_t flat = 0;
    for (int i = 0; i < n; ++i) {
      joint[i] = Sample(cdfs[i], rng.Uniform());
      flat += strides[i] * static_cast<std::size_t>(joint[i]);
    }
    for (int i = 0; i < n; ++i) {
      ++report.counts[i][joint[i]];
      payoff[i][joint[i]] += game.utilities[i][flat];
    }
  }
  report.cumulative_payoff.resize(n);
  for (int i = 0; i < n; ++i) {
    report.cumulative_payoff[i] = Eigen::Map<const Eigen::VectorXd>(
        payoff[i].data(), static_cast<Eigen::Index>(payoff[i].size()));
  }
  return report;
}

GradientEstimate EstimateGradient(const OracleReport& report,
                                  const RegularizerSet& regs, int player,
                                  int iteration) {
  if (player < 0 || player >= static_cast<int>(report.counts.size()) ||
      regs.size() != report.counts.size()) {
    throw DimensionError("player or regularizer set does not match report");
  }
  const Regularizer& reg = regs[player];
  const Eigen::VectorXd& pi = report.profile.distributions[player];
  GradientEstimate est;
  est.plays = report.plays;
  est.iteration = iteration;
  est.raw = Eigen::VectorXd::Zero(pi.size());
  if (reg.lambda != 0.0) {
    const double m = static_cast<double>(report.plays);
    for (Eigen::Index a = 0; a < pi.size(); ++a) {
      if (!(pi[a] > 0.0)) {
        throw SingularityError("importance weight is unbounded: action " +
                               std::to_string(a) + " of player " +
                               std::to_string(player) +
                               " has zero probability");
      }
      if (report.counts[player][a] == 0) continue;
      est.raw[a] =
          reg.lambda * report.cumulative_payoff[player][a] / (pi[a] * m);
    }
  }
  est.field = est.raw - RegGradient(reg, pi);
  return est;
}

std::vector<GradientEstimate> EstimateGradients(const OracleReport& report,
                                                const RegularizerSet& regs,
                                                int iteration) {
  std::vector<GradientEstimate> out;
  for (int i = 0; i < static_cast<int>(report.counts.size()); ++i) {
    out.push_back(EstimateGradient(report, regs, i, iteration));
  }
  return out;
}

double TheoreticalVariance(const Game& game, const StrategyProfile& profile,
                           int player, int action, double lambda,
                           std::int64_t plays) {
  const double p = profile.distributions.at(player)[action];
  if (!(p > 0.0)) {
    throw SingularityError("variance is unbounded at a zero-probability action");
  }
  if (plays < 1) throw ValidationError("the oracle needs at least one play");
  if (lambda == 0.0) return 0.0;
  const double mean = ActionUtilities(game, profile, player)[action];
  const double second = ActionSecondMoments(game, profile, player)[action];
  const double tilde = std::max(0.0, second - p * mean * mean);
  return lambda * lambda * tilde / (static_cast<double>(plays) * p);
}

std::string ReportToJsonLine(const OracleReport& report, int iteration) {
  nlohmann::json players = nlohmann::json::array();
  for (std::size_t i = 0; i < report.counts.size(); ++i) {
    const Eigen::VectorXd& u = report.cumulative_payoff[i];
    const Eigen::VectorXd& pi = report.profile.distributions[i];
    players.push_back({
        {"counts", report.counts[i]},
        {"cumulative_payoff", std::vector<double>(u.data(), u.data() + u.size())},
        {"profile", std::vector<double>(pi.data(), pi.data() + pi.size())},
    });
  }
  nlohmann::json line = {
      {"iteration", iteration}, {"plays", report.plays}, {"players", players}};
  return line.dump();
}

}  // namespace gqre
