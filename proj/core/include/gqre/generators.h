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

#ifndef GQRE_GENERATORS_H_
#define GQRE_GENERATORS_H_

#include "gqre/game.h"
#include "gqre/random.h"

namespace gqre {

// Normalized two-player matching pennies.
Game MatchingPennies();

// (A, B) = (mu I + K, mu I - K) with K skew-symmetric of spectral norm
// `skew`, drawn from the Gaussian skew part of a standard normal matrix. The
// raw matrices are kept in metadata.pre_normalization.
Game StronglyMonotone(int n, double mu, double skew, Rng& rng);

// (A, B) = (U V^T + S, U V^T - S) with U, V standard normal m x k and S the
// skew part of a standard normal m x m matrix, so rank(A + B) = k.
Game RankK(int m, int k, Rng& rng);

}  // namespace gqre

#endif  // GQRE_GENERATORS_H_
