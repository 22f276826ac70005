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

#include "gqre/game.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gqre/errors.h"

namespace gqre {
namespace {

using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMajorMatrix> AsMatrix(const Game& game, int player) {
  return {game.utilities[player].data(), game.action_counts[0],
          game.action_counts[1]};
}

void CheckShapes(const Game& game, const StrategyProfile& profile) {
  if (profile.num_players() != game.num_players()) {
    throw DimensionError("profile has " +
                         std::to_string(profile.num_players()) +
                         " players, game has " +
                         std::to_string(game.num_players()));
  }
  for (int i = 0; i < game.num_players(); ++i) {
    if (profile.distributions[i].size() != game.action_counts[i]) {
      throw DimensionError("player " + std::to_string(i) + " has " +
                           std::to_string(game.action_counts[i]) +
                           " actions but the profile gives " +
                           std::to_string(profile.distributions[i].size()));
    }
  }
}

// Visits every joint action in flat-index order (last player fastest), passing
// the flat index, the joint action and the product of pi_k(a_k) over all k not
// in `free_players`.
template <typename Fn>
void ForEachWeighted(const Game& game, const StrategyProfile& profile,
                     int free_a, int free_b, Fn&& fn) {
  const int n = game.num_players();
  std::vector<int> joint(n, 0);
  const std::size_t total = game.num_joint_actions();
  for (std::size_t flat = 0; flat < total; ++flat) {
    double weight = 1.0;
    for (int k = 0; k < n; ++k) {
      if (k == free_a || k == free_b) continue;
      weight *= profile.distributions[k][joint[k]];
    }
    fn(flat, joint, weight);
    for (int k = n - 1; k >= 0; --k) {
      if (++joint[k] < game.action_counts[k]) break;
      joint[k] = 0;
    }
  }
}

Eigen::VectorXd ContractToPlayer(const Game& game,
                                 const StrategyProfile& profile, int player,
                                 bool squared) {
  CheckShapes(game, profile);
  if (player < 0 || player >= game.num_players()) {
    throw DimensionError("player index out of range");
  }
  const std::vector<double>& tensor = game.utilities[player];
  if (game.num_players() == 1) {
    Eigen::VectorXd out(game.action_counts[0]);
    for (int a = 0; a < out.size(); ++a) {
      out[a] = squared ? tensor[a] * tensor[a] : tensor[a];
    }
    return out;
  }
  if (game.num_players() == 2 && !squared) {
    const auto m = AsMatrix(game, player);
    if (player == 0) return m * profile.distributions[1];
    return m.transpose() * profile.distributions[0];
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(game.action_counts[player]);
  ForEachWeighted(game, profile, player, -1,
                  [&](std::size_t flat, const std::vector<int>& joint,
                      double weight) {
                    const double u = tensor[flat];
                    out[joint[player]] += weight * (squared ? u * u : u);
                  });
  return out;
}

}  // namespace

std::size_t Game::num_joint_actions() const {
  std::size_t total = 1;
  for (int c : action_counts) total *= static_cast<std::size_t>(c);
  return total;
}

int Game::max_actions() const {
  return action_counts.empty()
             ? 0
             : *std::max_element(action_counts.begin(), action_counts.end());
}

int Game::total_actions() const {
  int total = 0;
  for (int c : action_counts) total += c;
  return total;
}

std::vector<std::size_t> Game::strides() const {
  std::vector<std::size_t> out(action_counts.size(), 1);
  for (int j = num_players() - 2; j >= 0; --j) {
    out[j] = out[j + 1] * static_cast<std::size_t>(action_counts[j + 1]);
  }
  return out;
}

std::size_t Game::FlatIndex(const std::vector<int>& joint_action) const {
  const auto s = strides();
  std::size_t flat = 0;
  for (int j = 0; j < num_players(); ++j) {
    flat += static_cast<std::size_t>(joint_action[j]) * s[j];
  }
  return flat;
}

Game Game::Bimatrix(const Eigen::MatrixXd& row, const Eigen::MatrixXd& col) {
  if (row.rows() != col.rows() || row.cols() != col.cols()) {
    throw DimensionError("bimatrix payoffs must have equal shapes");
  }
  Game game;
  game.action_counts = {static_cast<int>(row.rows()),
                        static_cast<int>(row.cols())};
  for (const Eigen::MatrixXd* m : {&row, &col}) {
    std::vector<double> flat(m->size());
    Eigen::Map<RowMajorMatrix>(flat.data(), m->rows(), m->cols()) = *m;
    game.utilities.push_back(std::move(flat));
  }
  return game;
}

void ValidateGame(const Game& game) {
  if (game.num_players() < 1) throw DimensionError("game has no players");
  for (int c : game.action_counts) {
    if (c < 1) throw DimensionError("every player needs at least one action");
  }
  if (static_cast<int>(game.utilities.size()) != game.num_players()) {
    throw DimensionError("expected one utility tensor per player");
  }
  const std::size_t total = game.num_joint_actions();
  for (int i = 0; i < game.num_players(); ++i) {
    if (game.utilities[i].size() != total) {
      throw DimensionError("utility tensor of player " + std::to_string(i) +
                           " has " + std::to_string(game.utilities[i].size()) +
                           " entries, expected " + std::to_string(total));
    }
  }
}

int StrategyProfile::offset(int player) const {
  int off = 0;
  for (int i = 0; i < player; ++i) {
    off += static_cast<int>(distributions[i].size());
  }
  return off;
}

Eigen::VectorXd StrategyProfile::Stacked() const {
  Eigen::VectorXd out(offset(num_players()));
  for (int i = 0; i < num_players(); ++i) {
    out.segment(offset(i), distributions[i].size()) = distributions[i];
  }
  return out;
}

StrategyProfile StrategyProfile::FromStacked(
    const Eigen::VectorXd& stacked, const std::vector<int>& action_counts) {
  StrategyProfile profile;
  int off = 0;
  for (int c : action_counts) {
    profile.distributions.push_back(stacked.segment(off, c));
    off += c;
  }
  if (off != stacked.size()) {
    throw DimensionError("stacked vector length does not match action counts");
  }
  return profile;
}

StrategyProfile UniformProfile(const Game& game) {
  StrategyProfile profile;
  for (int c : game.action_counts) {
    profile.distributions.push_back(Eigen::VectorXd::Constant(c, 1.0 / c));
  }
  return profile;
}

void ValidateProfile(const StrategyProfile& profile, double tolerance) {
  if (profile.floor < 0.0) throw ValidationError("negative profile floor");
  for (int i = 0; i < profile.num_players(); ++i) {
    const Eigen::VectorXd& p = profile.distributions[i];
    if (p.size() == 0) {
      throw ValidationError("player " + std::to_string(i) +
                            " has an empty strategy");
    }
    if (!p.allFinite()) {
      throw ValidationError("player " + std::to_string(i) +
                            " has non-finite probabilities");
    }
    if (p.minCoeff() < -tolerance) {
      throw ValidationError("player " + std::to_string(i) +
                            " has a negative probability");
    }
    if (std::abs(p.sum() - 1.0) > tolerance) {
      std::ostringstream msg;
      msg << "player " << i << " probabilities sum to " << p.sum()
          << ", not 1";
      throw ValidationError(msg.str());
    }
    if (profile.floor > 0.0) {
      if (profile.floor > 1.0 / static_cast<double>(p.size()) + 1e-15) {
        throw ValidationError("profile floor exceeds 1/|A_i|");
      }
      if (p.minCoeff() < profile.floor - tolerance) {
        throw ValidationError("player " + std::to_string(i) +
                              " violates the exploration floor");
      }
    }
  }
}

void ValidateProfileForGame(const Game& game, const StrategyProfile& profile,
                            double tolerance) {
  CheckShapes(game, profile);
  ValidateProfile(profile, tolerance);
}

Game NormalizeUtilities(const Game& game) {
  ValidateGame(game);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& tensor : game.utilities) {
    for (double x : tensor) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
  Game out = game;
  out.normalized = true;
  const double range = hi - lo;
  for (auto& tensor : out.utilities) {
    for (double& x : tensor) x = range > 0.0 ? (x - lo) / range : 0.0;
  }
  return out;
}

double ExpectedUtility(const Game& game, const StrategyProfile& profile,
                       int player) {
  return profile.distributions[player].dot(
      ActionUtilities(game, profile, player));
}

Eigen::VectorXd ActionUtilities(const Game& game,
                                const StrategyProfile& profile, int player) {
  return ContractToPlayer(game, profile, player, /*squared=*/false);
}

Eigen::VectorXd ActionSecondMoments(const Game& game,
                                    const StrategyProfile& profile,
                                    int player) {
  return ContractToPlayer(game, profile, player, /*squared=*/true);
}

Eigen::MatrixXd InteractionBlock(const Game& game,
                                 const StrategyProfile& profile, int player,
                                 int other) {
  CheckShapes(game, profile);
  if (player == other) {
    throw DimensionError("interaction block needs two distinct players");
  }
  if (game.num_players() == 2) {
    const auto m = AsMatrix(game, player);
    if (player == 0) return m;
    return m.transpose();
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(game.action_counts[player],
                                              game.action_counts[other]);
  const std::vector<double>& tensor = game.utilities[player];
  ForEachWeighted(game, profile, player, other,
                  [&](std::size_t flat, const std::vector<int>& joint,
                      double weight) {
                    out(joint[player], joint[other]) += weight * tensor[flat];
                  });
  return out;
}

}  // namespace gqre
