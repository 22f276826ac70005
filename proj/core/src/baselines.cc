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

#include "gqre/baselines.h"

#include <cmath>
#include <string>

#include "gqre/errors.h"
#include "gqre/simplex.h"
#include "run_loop.h"

namespace gqre {
namespace {

using internal::StepContext;

// normalize(pi * exp(step * g)) followed by the floor projection.
Eigen::VectorXd MultiplicativeStep(const Eigen::VectorXd& pi,
                                   const Eigen::VectorXd& g, double step,
                                   double epsilon) {
  return EpsilonProjection(WeightedSoftmax(pi, step * g), epsilon);
}

}  // namespace

Trajectory RunHardFw(const Game& game, const RegularizerSet& regs,
                     const Schedule& schedule, const RunOptions& options,
                     Rng& rng) {
  return internal::RunLoop(
      "hard_fw", game, regs, schedule, options, rng,
      [](const StepContext& ctx) {
        if (!(ctx.params.gamma <= 1.0)) {
          throw ValidationError("Frank-Wolfe steps need gamma <= 1");
        }
        const StrategyProfile& pi = *ctx.current;
        const auto field = ctx.source->Evaluate(pi, ctx.params.samples, ctx.t);
        StrategyProfile next = pi;
        for (int i = 0; i < pi.num_players(); ++i) {
          Eigen::Index best = 0;
          field[i].maxCoeff(&best);
          Eigen::VectorXd vertex = Eigen::VectorXd::Zero(field[i].size());
          vertex[best] = 1.0;
          const Eigen::VectorXd s =
              EpsilonProjection(vertex, ctx.params.epsilon);
          next.distributions[i] += ctx.params.gamma * (s - pi.distributions[i]);
        }
        return next;
      });
}

Trajectory RunExtragradient(const Game& game, const RegularizerSet& regs,
                            const Schedule& schedule,
                            const RunOptions& options, Rng& rng) {
  return internal::RunLoop(
      "extragradient", game, regs, schedule, options, rng,
      [](const StepContext& ctx) {
        const StrategyProfile& pi = *ctx.current;
        const double step = ctx.params.gamma;
        const double eps = ctx.params.epsilon;
        const auto lead = ctx.source->Evaluate(pi, ctx.params.samples, ctx.t);
        StrategyProfile half = pi;
        for (int i = 0; i < pi.num_players(); ++i) {
          half.distributions[i] =
              MultiplicativeStep(pi.distributions[i], lead[i], step, eps);
        }
        const auto field =
            ctx.source->Evaluate(half, ctx.params.samples, ctx.t);
        StrategyProfile next = pi;
        for (int i = 0; i < pi.num_players(); ++i) {
          next.distributions[i] =
              MultiplicativeStep(pi.distributions[i], field[i], step, eps);
        }
        return next;
      });
}

Trajectory RunOgd(const Game& game, const RegularizerSet& regs,
                  const Schedule& schedule, const RunOptions& options,
                  Rng& rng) {
  std::vector<Eigen::VectorXd> previous;
  return internal::RunLoop(
      "ogd", game, regs, schedule, options, rng,
      [&previous](const StepContext& ctx) {
        const StrategyProfile& pi = *ctx.current;
        const auto field = ctx.source->Evaluate(pi, ctx.params.samples, ctx.t);
        if (previous.empty()) previous = field;
        StrategyProfile next = pi;
        for (int i = 0; i < pi.num_players(); ++i) {
          next.distributions[i] = MultiplicativeStep(
              pi.distributions[i], 2.0 * field[i] - previous[i],
              ctx.params.gamma, ctx.params.epsilon);
        }
        previous = field;
        return next;
      });
}

Trajectory RunAdaptivePgd(const Game& game, const RegularizerSet& regs,
                          const Schedule& schedule, const RunOptions& options,
                          Rng& rng) {
  RunOptions own = options;
  own.constant_step.reset();
  return internal::RunLoop(
      "adaptive_pgd", game, regs, schedule, own, rng,
      [](const StepContext& ctx) {
        const StrategyProfile& pi = *ctx.current;
        const auto field = ctx.source->Evaluate(pi, ctx.params.samples, ctx.t);
        const double step = 1.0 / std::sqrt(static_cast<double>(ctx.t));
        StrategyProfile next = pi;
        for (int i = 0; i < pi.num_players(); ++i) {
          next.distributions[i] = MultiplicativeStep(
              pi.distributions[i], field[i], step, ctx.params.epsilon);
        }
        return next;
      });
}

const std::vector<std::string_view>& AlgorithmNames() {
  static const std::vector<std::string_view> kNames = {
      "smoothed_fw", "hard_fw", "extragradient", "ogd", "adaptive_pgd"};
  return kNames;
}

Trajectory RunAlgorithm(std::string_view name, const Game& game,
                        const RegularizerSet& regs, const Schedule& schedule,
                        const RunOptions& options, Rng& rng) {
  if (name == "smoothed_fw") {
    return RunSmoothedFw(game, regs, schedule, options, rng);
  }
  if (name == "hard_fw") return RunHardFw(game, regs, schedule, options, rng);
  if (name == "extragradient") {
    return RunExtragradient(game, regs, schedule, options, rng);
  }
  if (name == "ogd") return RunOgd(game, regs, schedule, options, rng);
  if (name == "adaptive_pgd") {
    return RunAdaptivePgd(game, regs, schedule, options, rng);
  }
  std::string known;
  for (std::string_view n : AlgorithmNames()) {
    if (!known.empty()) known += ", ";
    known += n;
  }
  throw ValidationError("unknown algorithm '" + std::string(name) +
                        "' (known: " + known + ")");
}

}  // namespace gqre
