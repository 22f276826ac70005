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

#include <string>
#include <string_view>

#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "gqre/baselines.h"
#include "gqre/game.h"
#include "gqre/generators.h"
#include "gqre/metrics.h"
#include "gqre/oracle.h"
#include "gqre/random.h"
#include "gqre/regularizers.h"
#include "gqre/simplex.h"
#include "gqre/solver_fw.h"

namespace gqre {
namespace {

Game Monotone(int n) {
  Rng rng(7);
  return StronglyMonotone(n, 1.0, 0.3, rng);
}

RegularizerSet Entropy() {
  return {Regularizer::Entropy(1.0), Regularizer::Entropy(1.0)};
}

void BM_EpsilonProjection(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  Eigen::VectorXd s(n);
  for (int a = 0; a < n; ++a) s[a] = rng.Uniform();
  for (auto _ : state) {
    benchmark::DoNotOptimize(EpsilonProjection(s, 0.1 / n));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_EpsilonProjection)->RangeMultiplier(4)->Range(4, 4096)->Complexity();

void BM_QuantalResponse(benchmark::State& state) {
  const int n = 64;
  Rng rng(2);
  Eigen::VectorXd u(n);
  for (int a = 0; a < n; ++a) u[a] = rng.Uniform();
  Regularizer reg;
  switch (state.range(0)) {
    case 0: reg = Regularizer::Entropy(2.0); break;
    case 1: reg = Regularizer::TotalVariation(2.0); break;
    case 2: reg = Regularizer::Renyi(2.0, 0.5); break;
    case 3: reg = Regularizer::Hellinger(2.0); break;
    default: reg = Regularizer::SquaredMean(2.0); break;
  }
  state.SetLabel(std::string(DivergenceName(reg.kind)));
  for (auto _ : state) benchmark::DoNotOptimize(QuantalResponse(reg, u));
}
BENCHMARK(BM_QuantalResponse)->DenseRange(0, 4);

void BM_Simulate(benchmark::State& state) {
  const Game g = Monotone(static_cast<int>(state.range(0)));
  const StrategyProfile p = UniformProfile(g);
  const std::int64_t plays = state.range(1);
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(Simulate(g, p, plays, rng));
  state.SetItemsProcessed(state.iterations() * plays);
}
BENCHMARK(BM_Simulate)->Args({10, 100})->Args({100, 100})->Args({100, 10000});

void BM_SmoothedGapGradient(benchmark::State& state) {
  const Game g = Monotone(static_cast<int>(state.range(0)));
  const StrategyProfile p = UniformProfile(g);
  const RegularizerSet regs = Entropy();
  for (auto _ : state) {
    benchmark::DoNotOptimize(SmoothedGapGradient(g, regs, p, 1.0));
  }
}
BENCHMARK(BM_SmoothedGapGradient)->Arg(10)->Arg(100)->Arg(1000);

void BM_NashGap(benchmark::State& state) {
  const Game g = Monotone(static_cast<int>(state.range(0)));
  const StrategyProfile p = UniformProfile(g);
  const RegularizerSet regs = Entropy();
  for (auto _ : state) benchmark::DoNotOptimize(NashGap(g, regs, p));
}
BENCHMARK(BM_NashGap)->Arg(10)->Arg(100)->Arg(1000);

// 100 iterations per benchmark iteration, without gap metrics.
void BM_Algorithm(benchmark::State& state) {
  const std::string_view name = AlgorithmNames()[state.range(0)];
  const Game g = Monotone(static_cast<int>(state.range(1)));
  Schedule schedule;
  schedule.mode = Schedule::Mode::kTheorem;
  schedule.samples_override = 100;
  RunOptions opts;
  opts.iterations = 100;
  opts.mode = GradientMode::kOracle;
  opts.record_smoothed_gap = false;
  opts.record_nash_gap = false;
  state.SetLabel(std::string(name));
  for (auto _ : state) {
    Rng rng(4);
    benchmark::DoNotOptimize(
        RunAlgorithm(name, g, Entropy(), schedule, opts, rng));
  }
}
BENCHMARK(BM_Algorithm)
    ->ArgsProduct({{0, 1, 2, 3, 4}, {10, 200}})
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace gqre

BENCHMARK_MAIN();
