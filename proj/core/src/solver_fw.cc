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

#include "gqre/solver_fw.h"

#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <utility>

#include "gqre/errors.h"
#include "gqre/metrics.h"
#include "gqre/oracle.h"
#include "gqre/payoff.h"
#include "gqre/simplex.h"
#include "run_loop.h"

namespace gqre {

std::string_view GradientModeName(GradientMode mode) {
  return mode == GradientMode::kExact ? "exact" : "oracle";
}

GradientMode ParseGradientMode(std::string_view name) {
  if (name == "exact") return GradientMode::kExact;
  if (name == "oracle") return GradientMode::kOracle;
  throw ValidationError("unknown gradient mode '" + std::string(name) +
                        "' (known: exact, oracle)");
}

std::string_view ScheduleModeName(Schedule::Mode mode) {
  return mode == Schedule::Mode::kTheorem ? "theorem" : "fixed";
}

Schedule::Mode ParseScheduleMode(std::string_view name) {
  if (name == "theorem") return Schedule::Mode::kTheorem;
  if (name == "fixed") return Schedule::Mode::kFixed;
  throw ValidationError("unknown schedule mode '" + std::string(name) +
                        "' (known: theorem, fixed)");
}

StepParameters TheoremSchedule(int t, int max_actions) {
  if (t < 1) throw ValidationError("schedules start at t = 1");
  if (max_actions < 1) throw ValidationError("max_actions must be positive");
  const std::int64_t next = static_cast<std::int64_t>(t) + 1;
  StepParameters p;
  p.gamma = 1.0 / static_cast<double>(next);
  p.epsilon = 1.0 / static_cast<double>(next * max_actions);
  constexpr std::int64_t kLimit = std::numeric_limits<std::int64_t>::max();
  if (next > 2'000'000 || next * next * next > kLimit / max_actions) {
    throw ValidationError("theorem sample count overflows at t = " +
                          std::to_string(t));
  }
  p.samples = next * next * next * max_actions;
  return p;
}

StepParameters ScheduleAt(const Schedule& schedule, int t, int max_actions) {
  if (schedule.mode == Schedule::Mode::kTheorem) {
    StepParameters p;
    if (schedule.samples_override) {
      p.gamma = 1.0 / (static_cast<double>(t) + 1.0);
      p.epsilon = 1.0 / ((static_cast<double>(t) + 1.0) * max_actions);
      p.samples = *schedule.samples_override;
      if (t < 1) throw ValidationError("schedules start at t = 1");
    } else {
      p = TheoremSchedule(t, max_actions);
    }
    return p;
  }
  return {schedule.gamma, schedule.epsilon, schedule.samples};
}

void ValidateSchedule(const Schedule& schedule, int max_actions) {
  if (!(schedule.eta > 0.0) || !std::isfinite(schedule.eta)) {
    throw ValidationError("eta must be positive and finite");
  }
  if (schedule.samples_override && *schedule.samples_override < 1) {
    throw ValidationError("samples override must be at least 1");
  }
  if (schedule.mode == Schedule::Mode::kTheorem) return;
  if (!(schedule.gamma > 0.0 && schedule.gamma < 1.0)) {
    throw ValidationError("fixed gamma must lie in (0, 1)");
  }
  if (!(schedule.epsilon >= 0.0) ||
      schedule.epsilon * max_actions > 1.0 + 1e-12) {
    throw ValidationError("fixed epsilon must lie in [0, 1/max_actions]");
  }
  if (schedule.samples < 1) throw ValidationError("samples must be >= 1");
}

Eigen::VectorXd SmoothedDirection(const Eigen::VectorXd& gradient,
                                  const Eigen::VectorXd& pi, double eta) {
  if (!(eta > 0.0)) throw ValidationError("eta must be positive");
  if (gradient.size() != pi.size()) {
    throw DimensionError("gradient and strategy sizes differ");
  }
  return WeightedSoftmax(pi, gradient / eta);
}

GradientSource::GradientSource(const Game& game, const RegularizerSet& regs,
                               GradientMode mode, Rng& rng,
                               std::ostream* report_sink)
    : game_(game),
      regs_(regs),
      mode_(mode),
      rng_(rng),
      report_sink_(report_sink) {}

std::vector<Eigen::VectorXd> GradientSource::Evaluate(
    const StrategyProfile& profile, std::int64_t samples, int iteration) {
  ++calls_;
  if (mode_ == GradientMode::kExact) {
    return PayoffGradients(game_, regs_, profile);
  }
  const OracleReport report = Simulate(game_, profile, samples, rng_);
  plays_ += samples;
  if (report_sink_ != nullptr) {
    *report_sink_ << ReportToJsonLine(report, iteration) << '\n';
  }
  std::vector<Eigen::VectorXd> out;
  for (GradientEstimate& est : EstimateGradients(report, regs_, iteration)) {
    out.push_back(std::move(est.field));
  }
  return out;
}

namespace internal {

Trajectory RunLoop(std::string_view algorithm, const Game& game,
                   const RegularizerSet& regs, const Schedule& schedule,
                   const RunOptions& options, Rng& rng,
                   const UpdateRule& update) {
  ValidateGame(game);
  ValidateRegularizerSet(game, regs);
  const int max_actions = game.max_actions();
  ValidateSchedule(schedule, max_actions);
  if (options.iterations < 0) throw ValidationError("iterations must be >= 0");
  if (options.constant_step && !(*options.constant_step > 0.0)) {
    throw ValidationError("constant step must be positive");
  }

  Trajectory traj;
  traj.algorithm = std::string(algorithm);
  traj.seed = rng.seed();
  traj.schedule = schedule;
  traj.mode = options.mode;

  const double first_epsilon =
      options.iterations > 0 ? ScheduleAt(schedule, 1, max_actions).epsilon
                             : 0.0;
  StrategyProfile current;
  if (options.init) {
    ValidateProfileForGame(game, *options.init);
    current = *options.init;
    for (Eigen::VectorXd& d : current.distributions) {
      Eigen::VectorXd clipped = EpsilonProjection(d, first_epsilon);
      if (clipped != d) traj.init_clipped = true;
      d = std::move(clipped);
    }
  } else {
    current = UniformProfile(game);
  }
  current.floor = first_epsilon;
  traj.init = current;

  const int every = options.metric_every > 0
                        ? options.metric_every
                        : (options.iterations <= 2000 ? 1 : 10);
  GradientSource source(game, regs, options.mode, rng, options.report_sink);
  const auto start = std::chrono::steady_clock::now();
  for (int t = 1; t <= options.iterations; ++t) {
    internal::StepContext ctx;
    ctx.t = t;
    ctx.params = ScheduleAt(schedule, t, max_actions);
    if (options.constant_step) ctx.params.gamma = *options.constant_step;
    ctx.eta = schedule.eta;
    ctx.current = &current;
    ctx.source = &source;
    StrategyProfile next = update(ctx);
    next.floor = ctx.params.epsilon;
    current = std::move(next);

    IterationRecord rec;
    rec.iteration = t;
    rec.gamma = ctx.params.gamma;
    rec.epsilon = ctx.params.epsilon;
    rec.samples =
        options.mode == GradientMode::kOracle ? ctx.params.samples : 0;
    if (t % every == 0 || t == options.iterations) {
      if (options.record_smoothed_gap) {
        try {
          rec.smoothed_gap = SmoothedGap(game, regs, current, schedule.eta);
        } catch (const SingularityError&) {
        }
      }
      if (options.record_nash_gap) {
        rec.nash_gap = NashGap(game, regs, current).epsilon;
      }
    }
    rec.oracle_calls = source.calls();
    rec.plays = source.plays();
    rec.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    traj.records.push_back(rec);
    if (options.keep_profiles) traj.profiles.push_back(current);
  }
  traj.final_profile = current;
  return traj;
}

}  // namespace internal

Trajectory RunSmoothedFw(const Game& game, const RegularizerSet& regs,
                         const Schedule& schedule, const RunOptions& options,
                         Rng& rng) {
  return internal::RunLoop(
      "smoothed_fw", game, regs, schedule, options, rng,
      [](const internal::StepContext& ctx) {
        if (!(ctx.params.gamma <= 1.0)) {
          throw ValidationError("Frank-Wolfe steps need gamma <= 1");
        }
        const StrategyProfile& pi = *ctx.current;
        const std::vector<Eigen::VectorXd> field =
            ctx.source->Evaluate(pi, ctx.params.samples, ctx.t);
        StrategyProfile next = pi;
        for (int i = 0; i < pi.num_players(); ++i) {
          const Eigen::VectorXd s = EpsilonProjection(
              SmoothedDirection(field[i], pi.distributions[i], ctx.eta),
              ctx.params.epsilon);
          next.distributions[i] += ctx.params.gamma * (s - pi.distributions[i]);
        }
        return next;
      });
}

}  // namespace gqre
