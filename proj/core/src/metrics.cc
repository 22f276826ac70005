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

#include "gqre/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gqre/errors.h"
#include "gqre/payoff.h"

namespace gqre {
namespace {

// Logits relative to the mean, (g - <pi, g>) / eta, and their largest value
// over the support of pi.
double CenteredLogits(const Eigen::VectorXd& gradient,
                      const Eigen::VectorXd& pi, double eta,
                      Eigen::VectorXd* z) {
  const double mean = pi.dot(gradient);
  *z = (gradient.array() - mean) / eta;
  double top = -std::numeric_limits<double>::infinity();
  for (Eigen::Index a = 0; a < pi.size(); ++a) {
    if (pi[a] > 0.0) top = std::max(top, (*z)[a]);
  }
  return top;
}

}  // namespace

double SmoothedGapFromGradient(const Eigen::VectorXd& gradient,
                               const Eigen::VectorXd& pi, double eta) {
  if (!(eta > 0.0)) throw ValidationError("eta must be positive");
  if (gradient.size() != pi.size()) {
    throw DimensionError("gradient and strategy sizes differ");
  }
  Eigen::VectorXd z;
  const double top = CenteredLogits(gradient, pi, eta, &z);
  if (!std::isfinite(top)) throw ValidationError("strategy has empty support");
  double value;
  if (top <= 1.0) {
    // log(sum pi e^z) = log1p(sum pi - 1 + sum pi (e^z - 1)).
    double sum = pi.sum() - 1.0;
    for (Eigen::Index a = 0; a < pi.size(); ++a) {
      if (pi[a] > 0.0) sum += pi[a] * std::expm1(z[a]);
    }
    value = std::log1p(sum);
  } else {
    double sum = 0.0;
    for (Eigen::Index a = 0; a < pi.size(); ++a) {
      if (pi[a] > 0.0) sum += pi[a] * std::exp(z[a] - top);
    }
    value = top + std::log(sum);
  }
  return std::max(0.0, eta * value);
}

std::vector<double> SmoothedGaps(const Game& game, const RegularizerSet& regs,
                                 const StrategyProfile& profile, double eta) {
  std::vector<double> out;
  for (int i = 0; i < game.num_players(); ++i) {
    out.push_back(SmoothedGapFromGradient(
        PayoffGradient(game, regs, profile, i), profile.distributions[i], eta));
  }
  return out;
}

double SmoothedGap(const Game& game, const RegularizerSet& regs,
                   const StrategyProfile& profile, double eta) {
  double total = 0.0;
  for (double v : SmoothedGaps(game, regs, profile, eta)) total += v;
  return total;
}

Eigen::VectorXd SmoothedGapGradient(const Game& game,
                                    const RegularizerSet& regs,
                                    const StrategyProfile& profile,
                                    double eta) {
  if (!(eta > 0.0)) throw ValidationError("eta must be positive");
  const int size = game.total_actions();
  Eigen::VectorXd field(size);
  Eigen::VectorXd direction_minus_pi(size);
  Eigen::VectorXd tilt(size);
  for (int i = 0; i < game.num_players(); ++i) {
    const Eigen::VectorXd& pi = profile.distributions[i];
    const Eigen::VectorXd f = PayoffGradient(game, regs, profile, i);
    // log <pi, exp(f / eta)> relative to the mean logit.
    Eigen::VectorXd z;
    const double top = CenteredLogits(f, pi, eta, &z);
    double sum = 0.0;
    for (Eigen::Index a = 0; a < pi.size(); ++a) {
      if (pi[a] > 0.0) sum += pi[a] * std::exp(z[a] - top);
    }
    const double log_partition = top + std::log(sum);
    const Eigen::VectorXd weights = (z.array() - log_partition).exp();
    const int off = profile.offset(i);
    field.segment(off, pi.size()) = f;
    direction_minus_pi.segment(off, pi.size()) =
        pi.cwiseProduct(weights) - pi;
    tilt.segment(off, pi.size()) = eta * weights;
  }
  const Eigen::MatrixXd h = GameJacobian(game, regs, profile);
  return -field + h.transpose() * direction_minus_pi + tilt;
}

PureVerification VerifyGqrePure(const Game& game, const RegularizerSet& regs,
                                const StrategyProfile& profile, double tol) {
  PureVerification out;
  out.is_gqre = true;
  for (int i = 0; i < game.num_players(); ++i) {
    double slack;
    try {
      const Eigen::VectorXd f = PayoffGradient(game, regs, profile, i);
      slack = f.maxCoeff() - profile.distributions[i].dot(f);
    } catch (const SingularityError&) {
      slack = std::numeric_limits<double>::infinity();
    }
    out.max_slack.push_back(slack);
    if (!(slack <= tol)) out.is_gqre = false;
  }
  return out;
}

NashGapResult NashGap(const Game& game, const RegularizerSet& regs,
                      const StrategyProfile& profile) {
  ValidateRegularizerSet(game, regs);
  NashGapResult out;
  for (int i = 0; i < game.num_players(); ++i) {
    const Eigen::VectorXd u = ActionUtilities(game, profile, i);
    const double best = BestResponseValue(regs[i], u);
    const double achieved =
        PerturbedObjective(regs[i], u, profile.distributions[i]);
    const double gap = best - achieved;
    out.per_player.push_back(gap);
    out.epsilon = std::max(out.epsilon, gap);
  }
  return out;
}

GapReport EvaluateGaps(const Game& game, const RegularizerSet& regs,
                       const StrategyProfile& profile, double eta, double tol) {
  ValidateRegularizerSet(game, regs);
  GapReport report;
  const PureVerification pure = VerifyGqrePure(game, regs, profile, tol);
  const NashGapResult nash = NashGap(game, regs, profile);
  report.epsilon = nash.epsilon;
  report.is_gqre = true;
  double total = 0.0;
  bool total_defined = true;
  for (int i = 0; i < game.num_players(); ++i) {
    PlayerGapReport player;
    player.epsilon = nash.per_player[i];
    player.max_pure_slack = pure.max_slack[i];
    if (std::isfinite(pure.max_slack[i])) {
      player.smoothed_gap = SmoothedGapFromGradient(
          PayoffGradient(game, regs, profile, i), profile.distributions[i],
          eta);
      total += *player.smoothed_gap;
    } else {
      total_defined = false;
    }
    const bool accepted = IsNonsmooth(regs[i]) ? player.epsilon <= tol
                                               : player.max_pure_slack <= tol;
    if (!accepted) report.is_gqre = false;
    report.players.push_back(player);
  }
  if (total_defined) report.smoothed_gap = total;
  return report;
}

}  // namespace gqre
