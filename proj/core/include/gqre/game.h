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

#ifndef GQRE_GAME_H_
#define GQRE_GAME_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gqre {

// Provenance of a game. Generators fill in their parameters and keep the
// utility tensors as they were before normalization so that structural
// identities (A + B = 2 mu I, rank(A + B) = k) stay checkable afterwards.
struct GameMetadata {
  std::string generator = "custom";
  std::optional<std::uint64_t> seed;
  std::optional<double> mu;
  std::optional<double> skew;
  std::optional<int> k;
  std::optional<std::vector<std::vector<double>>> pre_normalization;
};

// Finite normal-form game with N players.
//
// utilities[i] is player i's payoff tensor over the joint action space, stored
// row-major with strides ordered by player index: the joint action
// (a_0, ..., a_{N-1}) lives at sum_j a_j * stride_j where the last player has
// stride 1 and stride_j = stride_{j+1} * action_counts[j+1].
struct Game {
  std::vector<int> action_counts;
  std::vector<std::vector<double>> utilities;
  bool normalized = false;
  GameMetadata metadata;

  int num_players() const { return static_cast<int>(action_counts.size()); }
  std::size_t num_joint_actions() const;
  int max_actions() const;
  // Sum of all players' action counts; the side length of the game Jacobian.
  int total_actions() const;
  std::vector<std::size_t> strides() const;
  std::size_t FlatIndex(const std::vector<int>& joint_action) const;

  // Builds a two-player game from row-player matrix A and column-player
  // matrix B (both |A_0| x |A_1|).
  static Game Bimatrix(const Eigen::MatrixXd& row, const Eigen::MatrixXd& col);
};

// Throws DimensionError unless every tensor has prod_j |A_j| entries and there
// is at least one player with at least one action.
void ValidateGame(const Game& game);

// One mixed strategy per player. A positive floor records that every
// coordinate is at least `floor` (the exploration simplex).
struct StrategyProfile {
  std::vector<Eigen::VectorXd> distributions;
  double floor = 0.0;

  int num_players() const { return static_cast<int>(distributions.size()); }
  // Offset of player i's block inside the stacked vector.
  int offset(int player) const;
  Eigen::VectorXd Stacked() const;
  static StrategyProfile FromStacked(const Eigen::VectorXd& stacked,
                                     const std::vector<int>& action_counts);
};

StrategyProfile UniformProfile(const Game& game);

// Checks nonnegativity, unit sums (within 1e-12 unless a looser tolerance is
// given) and the floor. Throws ValidationError with a descriptive message.
void ValidateProfile(const StrategyProfile& profile, double tolerance = 1e-12);
// Shape check against the game, then ValidateProfile.
void ValidateProfileForGame(const Game& game, const StrategyProfile& profile,
                            double tolerance = 1e-12);

// Affine map x -> (x - min) / (max - min) using the global extrema over all
// players' tensors jointly; a constant game maps to all zeros.
Game NormalizeUtilities(const Game& game);

// u_player(pi): the expectation of player's utility under the product measure.
double ExpectedUtility(const Game& game, const StrategyProfile& profile,
                       int player);

// u_player(a, pi_{-player}) for every own action a.
Eigen::VectorXd ActionUtilities(const Game& game,
                                const StrategyProfile& profile, int player);

// sum_{a_-i} pi_{-i}(a_-i) u_i(a, a_-i)^2 for every own action a.
Eigen::VectorXd ActionSecondMoments(const Game& game,
                                    const StrategyProfile& profile, int player);

// d^2 u_player / d pi_player d pi_other, an |A_player| x |A_other| matrix
// obtained by contracting the tensor against every remaining player.
Eigen::MatrixXd InteractionBlock(const Game& game,
                                 const StrategyProfile& profile, int player,
                                 int other);

}  // namespace gqre

#endif  // GQRE_GAME_H_
