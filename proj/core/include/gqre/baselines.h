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

#ifndef GQRE_BASELINES_H_
#define GQRE_BASELINES_H_

#include <string_view>
#include <vector>

#include "gqre/game.h"
#include "gqre/random.h"
#include "gqre/regularizers.h"
#include "gqre/solver_fw.h"

namespace gqre {

// Frank-Wolfe with the vertex at argmax_a F_i(a) (lowest index on ties) as the
// direction, projected onto the exploration simplex.
Trajectory RunHardFw(const Game& game, const RegularizerSet& regs,
                     const Schedule& schedule, const RunOptions& options,
                     Rng& rng);

// Entropic mirror-prox: a leading step to pi_hat from F(pi), then the update
// from pi along F(pi_hat). Two gradient evaluations per iteration.
Trajectory RunExtragradient(const Game& game, const RegularizerSet& regs,
                            const Schedule& schedule,
                            const RunOptions& options, Rng& rng);

// Optimistic multiplicative weights: log pi += gamma (2 F_t - F_{t-1}), with
// F_0 taken equal to F_1.
Trajectory RunOgd(const Game& game, const RegularizerSet& regs,
                  const Schedule& schedule, const RunOptions& options,
                  Rng& rng);

// Exponentiated gradient with gamma_t = 1/sqrt(t). Ignores constant_step.
Trajectory RunAdaptivePgd(const Game& game, const RegularizerSet& regs,
                          const Schedule& schedule, const RunOptions& options,
                          Rng& rng);

// Algorithm names accepted by RunAlgorithm, in a fixed order.
const std::vector<std::string_view>& AlgorithmNames();

// Dispatches by name: smoothed_fw, hard_fw, extragradient, ogd,
// adaptive_pgd. Throws ValidationError listing the known names otherwise.
Trajectory RunAlgorithm(std::string_view name, const Game& game,
                        const RegularizerSet& regs, const Schedule& schedule,
                        const RunOptions& options, Rng& rng);

}  // namespace gqre

#endif  // GQRE_BASELINES_H_
