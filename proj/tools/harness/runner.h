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

// Executes an ExperimentConfig over every (game, algorithm, seed) cell and
// writes the trajectory CSV, the run manifest and optionally a summary.

#ifndef GQRE_TOOLS_HARNESS_RUNNER_H_
#define GQRE_TOOLS_HARNESS_RUNNER_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gqre/game.h"
#include "harness/config.h"

namespace gqre::harness {

inline constexpr int kTrajectorySchemaVersion = 1;
inline constexpr int kManifestSchemaVersion = 1;

const std::vector<std::string>& TrajectoryColumns();
const std::vector<std::string>& SummaryColumns();

// Output directory: the explicit value, else the config's output_dir, else
// $GQRE_OUTPUT_DIR, else "gqre_out".
std::string ResolveOutputDir(const std::optional<std::string>& explicit_dir,
                             const ExperimentConfig& config);

struct RunnerOptions {
  std::string output_dir;
  // Overrides the config when positive.
  int workers = 0;
  bool write_summary = false;
  std::string command = "solve";
  // Progress lines; nullptr for silence.
  std::ostream* log = nullptr;
};

struct SummaryRow {
  std::string game_id;
  std::string algorithm;
  int runs = 0;
  int iteration = 0;
  std::optional<double> nash_gap_mean;
  std::optional<double> nash_gap_ci95;
  std::optional<double> smoothed_gap_mean;
  std::optional<double> smoothed_gap_ci95;
  double oracle_calls_mean = 0.0;
  double plays_mean = 0.0;
};

struct ExperimentOutputs {
  std::string trajectories_path;
  std::string manifest_path;
  std::string summary_path;
  std::vector<std::string> game_paths;
  std::int64_t rows = 0;
  std::vector<SummaryRow> summary;
};

ExperimentOutputs RunExperiment(const ExperimentConfig& config,
                                const RunnerOptions& options);

}  // namespace gqre::harness

#endif  // GQRE_TOOLS_HARNESS_RUNNER_H_
