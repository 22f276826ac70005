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

#include "gqre/simplex.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "gqre/errors.h"

namespace gqre {

SimplexProjection ProjectOntoEpsilonSimplex(const Eigen::VectorXd& s,
                                            double epsilon) {
  const Eigen::Index n = s.size();
  if (n == 0) throw ValidationError("cannot project an empty vector");
  if (!(epsilon >= 0.0)) throw ValidationError("epsilon must be nonnegative");
  const double n_eps = static_cast<double>(n) * epsilon;
  if (n_eps > 1.0 + 1e-12) {
    throw ValidationError("epsilon exceeds 1/n; the exploration simplex is empty");
  }
  const double budget = std::max(0.0, 1.0 - n_eps);

  SimplexProjection result;
  if (budget == 0.0) {
    result.point = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    result.shift = epsilon - s.maxCoeff();
    return result;
  }

  // Find the active set {a : y_a + lambda > 0} with y = s - epsilon. After
  // sorting y in decreasing order, the active set is a prefix of length k and
  // lambda = (budget - sum_{j<k} y_j) / k for the largest consistent k.
  std::vector<double> y(s.data(), s.data() + n);
  for (double& v : y) v -= epsilon;
  std::sort(y.begin(), y.end(), std::greater<>());
  double prefix = 0.0;
  double shift = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    prefix += y[k];
    const double candidate = (budget - prefix) / static_cast<double>(k + 1);
    if (y[k] + candidate > 0.0) shift = candidate;
    else break;
  }

  result.shift = shift;
  result.point.resize(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    result.point[a] = std::max(s[a] + shift, epsilon);
  }
  return result;
}

Eigen::VectorXd WeightedSoftmax(const Eigen::VectorXd& weights,
                                const Eigen::VectorXd& logits) {
  double top = -std::numeric_limits<double>::infinity();
  for (Eigen::Index a = 0; a < weights.size(); ++a) {
    if (weights[a] > 0.0) top = std::max(top, logits[a]);
  }
  if (!std::isfinite(top)) {
    throw ValidationError("softmax weights have empty support");
  }
  Eigen::VectorXd out(weights.size());
  double total = 0.0;
  for (Eigen::Index a = 0; a < weights.size(); ++a) {
    out[a] = weights[a] > 0.0 ? weights[a] * std::exp(logits[a] - top) : 0.0;
    total += out[a];
  }
  return out / total;
}

double WeightedLogSumExp(const Eigen::VectorXd& weights,
                         const Eigen::VectorXd& logits) {
  double top = -std::numeric_limits<double>::infinity();
  for (Eigen::Index a = 0; a < weights.size(); ++a) {
    if (weights[a] > 0.0) top = std::max(top, logits[a]);
  }
  if (!std::isfinite(top)) {
    throw ValidationError("log-sum-exp weights have empty support");
  }
  double total = 0.0;
  for (Eigen::Index a = 0; a < weights.size(); ++a) {
    if (weights[a] > 0.0) total += weights[a] * std::exp(logits[a] - top);
  }
  return top + std::log(total);
}

}  // namespace gqre
