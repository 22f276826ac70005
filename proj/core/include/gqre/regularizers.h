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

#ifndef GQRE_REGULARIZERS_H_
#define GQRE_REGULARIZERS_H_

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace gqre {

// Divergence families used as the perturbation f_i(p) = D(p || reference).
//
//   kEntropy          KL(p || q) = sum p log(p / q)
//   kTotalVariation   1/2 sum |p - q|
//   kRenyi            1/(alpha - 1) log sum p^alpha q^(1 - alpha)
//   kHellinger        1/2 sum (sqrt p - sqrt q)^2 = 1 - sum sqrt(p q)
//   kSquaredMean      (x^T (p - q))^2 for ordered support points x
enum class DivergenceKind {
  kEntropy,
  kTotalVariation,
  kRenyi,
  kHellinger,
  kSquaredMean,
};

std::string_view DivergenceName(DivergenceKind kind);
// Accepts the canonical names plus a few aliases ("kl", "logit", "tv",
// "fair", "sqmean"). Throws ValidationError on anything else.
DivergenceKind ParseDivergence(std::string_view name);

// Per-player perturbation: rationality lambda and the divergence f.
// An empty reference means uniform; empty support points mean 1..n.
struct Regularizer {
  DivergenceKind kind = DivergenceKind::kEntropy;
  double lambda = 1.0;
  Eigen::VectorXd reference;
  double alpha = 1.0;
  Eigen::VectorXd support_points;

  static Regularizer Entropy(double lambda) {
    return {DivergenceKind::kEntropy, lambda, {}, 1.0, {}};
  }
  static Regularizer TotalVariation(double lambda) {
    return {DivergenceKind::kTotalVariation, lambda, {}, 1.0, {}};
  }
  static Regularizer Renyi(double lambda, double alpha) {
    return {DivergenceKind::kRenyi, lambda, {}, alpha, {}};
  }
  static Regularizer Hellinger(double lambda) {
    return {DivergenceKind::kHellinger, lambda, {}, 1.0, {}};
  }
  static Regularizer SquaredMean(double lambda) {
    return {DivergenceKind::kSquaredMean, lambda, {}, 1.0, {}};
  }
};

using RegularizerSet = std::vector<Regularizer>;

// Throws ValidationError when lambda < 0, alpha is outside (0, 1], the
// reference is not a strictly positive distribution on n points, or the
// support points are not strictly increasing.
void ValidateRegularizer(const Regularizer& reg, int num_actions);

Eigen::VectorXd ReferenceOf(const Regularizer& reg, int num_actions);
Eigen::VectorXd SupportOf(const Regularizer& reg, int num_actions);

// True when the divergence has a gradient that blows up on the boundary of the
// simplex (entropy, Renyi with alpha < 1, Hellinger).
bool IsBoundarySingular(const Regularizer& reg);
// True for total variation, whose gradient is only a subgradient.
bool IsNonsmooth(const Regularizer& reg);

double RegValue(const Regularizer& reg, const Eigen::VectorXd& p);
// Exact gradient, or for total variation the subgradient 1/2 sign(p - q) with
// sign(0) = 0. Throws SingularityError at boundary points of singular kinds.
Eigen::VectorXd RegGradient(const Regularizer& reg, const Eigen::VectorXd& p);
// Hessian of f; zero for total variation (almost everywhere).
Eigen::MatrixXd RegHessian(const Regularizer& reg, const Eigen::VectorXd& p);

// lambda <p, u> - f(p): the objective every quantal response maximizes.
double PerturbedObjective(const Regularizer& reg, const Eigen::VectorXd& u,
                          const Eigen::VectorXd& p);

// Closed-form generalized quantal responses, argmax_p lambda <p, u> - f(p).
Eigen::VectorXd QrEntropy(double lambda, const Eigen::VectorXd& u,
                          const Eigen::VectorXd& reference);
Eigen::VectorXd QrTotalVariation(double lambda, const Eigen::VectorXd& u,
                                 const Eigen::VectorXd& reference);
Eigen::VectorXd QrRenyi(double lambda, double alpha, const Eigen::VectorXd& u,
                        const Eigen::VectorXd& reference);
Eigen::VectorXd QrHellinger(double lambda, const Eigen::VectorXd& u,
                            const Eigen::VectorXd& reference);
Eigen::VectorXd QrSquaredMean(double lambda, const Eigen::VectorXd& u,
                              const Eigen::VectorXd& reference,
                              const Eigen::VectorXd& support_points);

// Dispatches on reg.kind. Renyi with alpha within 1e-6 of 1 uses QrEntropy.
Eigen::VectorXd QuantalResponse(const Regularizer& reg,
                                const Eigen::VectorXd& u);

// Maximum of lambda <p, u> - f(p) over the simplex. Entropy uses the
// log-partition identity; other kinds evaluate the closed-form response.
double BestResponseValue(const Regularizer& reg, const Eigen::VectorXd& u);

struct NumericResponse {
  Eigen::VectorXd p;
  double objective = 0.0;
  // Best pure-direction improvement max_a g_a - <p, g> for smooth kinds, the
  // certified dual gap for total variation.
  double gap = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Generic solver used as an independent oracle: entropic mirror ascent on
// lambda <p, u> - f(p). Smooth kinds use backtracking step sizes; total
// variation uses diminishing subgradient steps with tail averaging and stops
// on a Lagrangian dual bound. Never throws on slow convergence; inspect
// `converged` instead.
NumericResponse QrNumeric(const Regularizer& reg, const Eigen::VectorXd& u,
                          double tol, int max_iterations = 2'000'000);

}  // namespace gqre

#endif  // GQRE_REGULARIZERS_H_
