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

#ifndef GQRE_SIMPLEX_H_
#define GQRE_SIMPLEX_H_

#include <Eigen/Dense>

namespace gqre {

struct SimplexProjection {
  Eigen::VectorXd point;
  // The shift lambda* with point_a = max(s_a + lambda*, epsilon).
  double shift = 0.0;
};

// Euclidean projection of s onto {p : p_a >= epsilon, sum p = 1}.
//
// The shift solves sum_a max(s_a - epsilon + lambda, 0) = 1 - n epsilon. The
// left side is piecewise linear and nondecreasing in lambda with breakpoints
// at epsilon - s_a, so sorting s gives lambda* exactly in O(n log n). Any real
// vector s is accepted; for a probability vector lambda* lies in
// [epsilon - max s, 0]. Throws ValidationError when epsilon is negative or
// exceeds 1/n.
SimplexProjection ProjectOntoEpsilonSimplex(const Eigen::VectorXd& s,
                                            double epsilon);

inline Eigen::VectorXd EpsilonProjection(const Eigen::VectorXd& s,
                                         double epsilon) {
  return ProjectOntoEpsilonSimplex(s, epsilon).point;
}

// Softmax of `logits` weighted by `weights` (weights_a exp(logits_a) /
// normalizer), stabilized by subtracting the largest logit on the support of
// the weights. Entries with zero weight stay zero.
Eigen::VectorXd WeightedSoftmax(const Eigen::VectorXd& weights,
                                const Eigen::VectorXd& logits);

// log sum_a weights_a exp(logits_a) over the support of the weights.
double WeightedLogSumExp(const Eigen::VectorXd& weights,
                         const Eigen::VectorXd& logits);

}  // namespace gqre

#endif  // GQRE_SIMPLEX_H_
