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

#ifndef GQRE_SRC_RUN_LOOP_H_
#define GQRE_SRC_RUN_LOOP_H_

#include <functional>
#include <string_view>

#include "gqre/solver_fw.h"

namespace gqre::internal {

struct StepContext {
  int t = 0;
  StepParameters params;
  double eta = 1.0;
  const StrategyProfile* current = nullptr;
  GradientSource* source = nullptr;
};

using UpdateRule = std::function<StrategyProfile(const StepContext&)>;

// Shared driver: validation, initialization, schedule lookup, metrics and
// timing around an algorithm-specific update.
Trajectory RunLoop(std::string_view algorithm, const Game& game,
                   const RegularizerSet& regs, const Schedule& schedule,
                   const RunOptions& options, Rng& rng,
                   const UpdateRule& update);

}  // namespace gqre::internal

#endif  // GQRE_SRC_RUN_LOOP_H_
