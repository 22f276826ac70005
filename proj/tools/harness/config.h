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

// Declarative experiment description read from a JSON document. The schema
// is documented in configs/README.md.

#ifndef GQRE_TOOLS_HARNESS_CONFIG_H_
#define GQRE_TOOLS_HARNESS_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gqre/game.h"
#include "gqre/regularizers.h"
#include "gqre/solver_fw.h"

namespace gqre::harness {

inline constexpr int kConfigSchemaVersion = 1;

struct GameSpec {
  std::string id;
  // One of matching-pennies, monotone, rank-k; empty when read from file.
  std::string generator;
  // Resolved path when the game comes from a file.
  std::string file;
  int n = 10;
  double mu = 1.0;
  double skew = 0.3;
  int m = 5;
  int k = 3;
  std::uint64_t seed = 7;
  // Overrides the experiment-wide metric cadence for this game.
  std::optional<int> metric_every;
};

struct ExperimentConfig {
  std::string name = "experiment";
  std::vector<GameSpec> games;
  // A single entry is applied to every player.
  std::vector<Regularizer> regularizers = {Regularizer::Entropy(1.0)};
  std::vector<std::string> algorithms = {"smoothed_fw"};
  GradientMode mode = GradientMode::kOracle;
  Schedule schedule;
  std::optional<double> constant_step;
  int iterations = 1000;
  int seed_count = 20;
  std::uint64_t base_seed = 2024;
  bool smoothed_gap = true;
  bool nash_gap = true;
  int metric_every = 0;
  bool wall_clock = true;
  // Per-player distributions; uniform when absent.
  std::optional<std::vector<std::vector<double>>> init;
  int workers = 0;
  std::optional<std::string> output_dir;
};

// Generator parameters as a self-contained game (no file access).
Game GenerateGame(const GameSpec& spec);

// Parses and validates. Relative game file paths resolve against base_dir.
// Throws ValidationError naming the offending key.
ExperimentConfig ParseConfig(const nlohmann::json& doc,
                             const std::string& base_dir = ".");
ExperimentConfig LoadConfig(const std::string& path);

// Canonical form with every field present; ParseConfig(ConfigToJson(c))
// reproduces c.
nlohmann::json ConfigToJson(const ExperimentConfig& config);

// Checks the invariants that do not depend on the games themselves.
void ValidateConfig(const ExperimentConfig& config);

nlohmann::json RegularizerToJson(const Regularizer& reg);
Regularizer RegularizerFromJson(const nlohmann::json& doc);

// The regularizer list expanded to one entry per player.
RegularizerSet ExpandRegularizers(const ExperimentConfig& config,
                                  int num_players);

// Matching pennies plus strongly monotone games with n in {10, 20, 100, 200},
// entropy with lambda = 1, the five algorithms, T = 1000, M = 100, eta = 1
// and 20 seeds.
ExperimentConfig DefaultBenchConfig();

// Adds the n = 1000 monotone game with sparse metric cadence.
void AddLargeGames(ExperimentConfig& config);

}  // namespace gqre::harness

#endif  // GQRE_TOOLS_HARNESS_CONFIG_H_
