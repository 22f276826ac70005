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

#ifndef GQRE_SOLVER_FW_H_
#define GQRE_SOLVER_FW_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gqre/game.h"
#include "gqre/random.h"
#include "gqre/regularizers.h"

namespace gqre {

enum class GradientMode { kExact, kOracle };

std::string_view GradientModeName(GradientMode mode);
GradientMode ParseGradientMode(std::string_view name);

struct Schedule {
  enum class Mode { kTheorem, kFixed };
  Mode mode = Mode::kFixed;
  // Used in fixed mode.
  double gamma = 0.1;
  double epsilon = 0.01;
  std::int64_t samples = 100;
  // Replaces M_t in theorem mode.
  std::optional<std::int64_t> samples_override;
  // Smoothing of the KL-proximal direction and of the gap.
  double eta = 1.0;
};

std::string_view ScheduleModeName(Schedule::Mode mode);
Schedule::Mode ParseScheduleMode(std::string_view name);

struct StepParameters {
  double gamma = 0.0;
  double epsilon = 0.0;
  std::int64_t samples = 0;
};

// gamma_t = 1/(t+1), epsilon_t = 1/((t+1) max_actions) and
// M_t = ceil(1/(epsilon_t gamma_t^2)) = (t+1)^3 max_actions. Requires t >= 1.
StepParameters TheoremSchedule(int t, int max_actions);

StepParameters ScheduleAt(const Schedule& schedule, int t, int max_actions);

// Throws ValidationError for out-of-range parameters, including a fixed
// epsilon above 1/max_actions.
void ValidateSchedule(const Schedule& schedule, int max_actions);

// s*_a = pi_a exp(g_a / eta) / <pi, exp(g / eta)>, the maximizer of
// <s, g> - eta KL(s || pi).
Eigen::VectorXd SmoothedDirection(const Eigen::VectorXd& gradient,
                                  const Eigen::VectorXd& pi, double eta);

// Produces the stacked field F(pi) either exactly or from simulated play, and
// counts what it spent.
class GradientSource {
 public:
  GradientSource(const Game& game, const RegularizerSet& regs,
                 GradientMode mode, Rng& rng,
                 std::ostream* report_sink = nullptr);

  std::vector<Eigen::VectorXd> Evaluate(const StrategyProfile& profile,
                                        std::int64_t samples, int iteration);

  GradientMode mode() const { return mode_; }
  std::int64_t calls() const { return calls_; }
  std::int64_t plays() const { return plays_; }

 private:
  const Game& game_;
  const RegularizerSet& regs_;
  GradientMode mode_;
  Rng& rng_;
  std::ostream* report_sink_;
  std::int64_t calls_ = 0;
  std::int64_t plays_ = 0;
};

struct RunOptions {
  int iterations = 1000;
  GradientMode mode = GradientMode::kExact;
  // Uniform when empty. A given profile is projected once onto the first
  // iteration's exploration simplex.
  std::optional<StrategyProfile> init;
  bool record_smoothed_gap = true;
  bool record_nash_gap = true;
  // Gap cadence; 0 means every iteration when iterations <= 2000 and every
  // 10th otherwise. The last iteration is always measured.
  int metric_every = 0;
  bool keep_profiles = false;
  // Replaces gamma_t for every algorithm except adaptive PGD.
  std::optional<double> constant_step;
  // Receives one JSON line per oracle report in oracle mode.
  std::ostream* report_sink = nullptr;
};

struct IterationRecord {
  int iteration = 0;
  double gamma = 0.0;
  double epsilon = 0.0;
  std::int64_t samples = 0;
  std::optional<double> smoothed_gap;
  std::optional<double> nash_gap;
  double wall_ms = 0.0;
  std::int64_t oracle_calls = 0;
  std::int64_t plays = 0;
};

struct Trajectory {
  std::string algorithm;
  std::uint64_t seed = 0;
  Schedule schedule;
  GradientMode mode = GradientMode::kExact;
  bool init_clipped = false;
  StrategyProfile init;
  std::vector<IterationRecord> records;
  // Profile after each iteration when keep_profiles is set.
  std::vector<StrategyProfile> profiles;
  StrategyProfile final_profile;
};

// Smoothed Frank-Wolfe: per player, s = Proj_eps(SmoothedDirection(F_i, pi_i,
// eta)) and pi_i <- pi_i + gamma (s - pi_i).
Trajectory RunSmoothedFw(const Game& game, const RegularizerSet& regs,
                         const Schedule& schedule, const RunOptions& options,
                         Rng& rng);

}  // namespace gqre

#endif  // GQRE_SOLVER_FW_H_
