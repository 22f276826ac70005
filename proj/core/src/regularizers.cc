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

#include "gqre/regularizers.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "gqre/errors.h"
#include "gqre/simplex.h"

namespace gqre {
namespace {

constexpr double kRenyiEntropyAlias = 1e-6;
constexpr int kMaxBisection = 200;
constexpr int kMaxBracketDoublings = 1100;

bool RenyiIsEntropy(const Regularizer& reg) {
  return reg.kind == DivergenceKind::kRenyi &&
         std::abs(reg.alpha - 1.0) < kRenyiEntropyAlias;
}

DivergenceKind EffectiveKind(const Regularizer& reg) {
  return RenyiIsEntropy(reg) ? DivergenceKind::kEntropy : reg.kind;
}

void RequireInterior(const Eigen::VectorXd& p, std::string_view what) {
  if (p.minCoeff() <= 0.0) {
    throw SingularityError(std::string(what) +
                           " gradient is unbounded at a boundary point");
  }
}

// Finds the offset delta > 0 at which the decreasing function `excess` crosses
// zero, by bisection on a bracket [tiny, hi] with hi doubled until the sign
// flips. Stops when the bracket is within a relative 1e-12 of its upper end.
double SolveOffset(const std::function<double(double)>& excess, double scale,
                   std::string_view what) {
  double lo = 1e-14 * (1.0 + std::abs(scale));
  if (!(excess(lo) > 0.0)) {
    throw NumericalError(std::string(what) +
                         ": root bracket failed at the lower end");
  }
  double hi = 1.0;
  int doublings = 0;
  while (excess(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > kMaxBracketDoublings || !std::isfinite(hi)) {
      throw NumericalError(std::string(what) +
                           ": root bracket failed at the upper end");
    }
  }
  for (int it = 0; it < kMaxBisection; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (excess(mid) > 0.0) lo = mid;
    else hi = mid;
    if (hi - lo <= 1e-12 * hi) break;
  }
  return 0.5 * (lo + hi);
}

// Distances d_a = delta + lambda (max u - u_a), computed without cancellation.
Eigen::VectorXd Distances(double delta, double lambda,
                          const Eigen::VectorXd& u) {
  return (delta + lambda * (u.maxCoeff() - u.array())).matrix();
}

}  // namespace

std::string_view DivergenceName(DivergenceKind kind) {
  switch (kind) {
    case DivergenceKind::kEntropy:
      return "entropy";
    case DivergenceKind::kTotalVariation:
      return "total_variation";
    case DivergenceKind::kRenyi:
      return "renyi";
    case DivergenceKind::kHellinger:
      return "hellinger";
    case DivergenceKind::kSquaredMean:
      return "squared_mean";
  }
  return "unknown";
}

DivergenceKind ParseDivergence(std::string_view name) {
  if (name == "entropy" || name == "kl" || name == "logit") {
    return DivergenceKind::kEntropy;
  }
  if (name == "total_variation" || name == "tv" || name == "fair") {
    return DivergenceKind::kTotalVariation;
  }
  if (name == "renyi") return DivergenceKind::kRenyi;
  if (name == "hellinger") return DivergenceKind::kHellinger;
  if (name == "squared_mean" || name == "sqmean") {
    return DivergenceKind::kSquaredMean;
  }
  throw ValidationError(
      "unknown regularizer kind '" + std::string(name) +
      "' (known: entropy, total_variation, renyi, hellinger, squared_mean)");
}

void ValidateRegularizer(const Regularizer& reg, int num_actions) {
  if (!(reg.lambda >= 0.0) || !std::isfinite(reg.lambda)) {
    throw ValidationError("lambda must be a finite nonnegative number");
  }
  if (reg.kind == DivergenceKind::kRenyi &&
      !(reg.alpha > 0.0 && reg.alpha <= 1.0)) {
    throw ValidationError("renyi alpha must lie in (0, 1]");
  }
  if (reg.reference.size() != 0) {
    if (reg.reference.size() != num_actions) {
      throw ValidationError("reference length does not match action count");
    }
    if (!(reg.reference.minCoeff() > 0.0) ||
        std::abs(reg.reference.sum() - 1.0) > 1e-9) {
      throw ValidationError(
          "reference must be a strictly positive probability vector");
    }
  }
  if (reg.support_points.size() != 0) {
    if (reg.support_points.size() != num_actions) {
      throw ValidationError("support points length does not match action count");
    }
    for (Eigen::Index a = 1; a < reg.support_points.size(); ++a) {
      if (!(reg.support_points[a] > reg.support_points[a - 1])) {
        throw ValidationError("support points must be strictly increasing");
      }
    }
  }
}

Eigen::VectorXd ReferenceOf(const Regularizer& reg, int num_actions) {
  if (reg.reference.size() != 0) return reg.reference;
  return Eigen::VectorXd::Constant(num_actions, 1.0 / num_actions);
}

Eigen::VectorXd SupportOf(const Regularizer& reg, int num_actions) {
  if (reg.support_points.size() != 0) return reg.support_points;
  return Eigen::VectorXd::LinSpaced(num_actions, 1.0, num_actions);
}

bool IsBoundarySingular(const Regularizer& reg) {
  switch (EffectiveKind(reg)) {
    case DivergenceKind::kEntropy:
    case DivergenceKind::kRenyi:
    case DivergenceKind::kHellinger:
      return true;
    default:
      return false;
  }
}

bool IsNonsmooth(const Regularizer& reg) {
  return reg.kind == DivergenceKind::kTotalVariation;
}

double RegValue(const Regularizer& reg, const Eigen::VectorXd& p) {
  const int n = static_cast<int>(p.size());
  const Eigen::VectorXd q = ReferenceOf(reg, n);
  switch (EffectiveKind(reg)) {
    case DivergenceKind::kEntropy: {
      double total = 0.0;
      for (int a = 0; a < n; ++a) {
        if (p[a] > 0.0) total += p[a] * std::log(p[a] / q[a]);
      }
      return total;
    }
    case DivergenceKind::kTotalVariation:
      return 0.5 * (p - q).cwiseAbs().sum();
    case DivergenceKind::kRenyi: {
      const double alpha = reg.alpha;
      double total = 0.0;
      for (int a = 0; a < n; ++a) {
        if (p[a] > 0.0) {
          total += std::pow(p[a], alpha) * std::pow(q[a], 1.0 - alpha);
        }
      }
      return std::log(total) / (alpha - 1.0);
    }
    case DivergenceKind::kHellinger:
      return 0.5 * (p.cwiseMax(0.0).cwiseSqrt() - q.cwiseSqrt()).squaredNorm();
    case DivergenceKind::kSquaredMean: {
      const double m = SupportOf(reg, n).dot(p - q);
      return m * m;
    }
  }
  return 0.0;
}

Eigen::VectorXd RegGradient(const Regularizer& reg, const Eigen::VectorXd& p) {
  const int n = static_cast<int>(p.size());
  const Eigen::VectorXd q = ReferenceOf(reg, n);
  switch (EffectiveKind(reg)) {
    case DivergenceKind::kEntropy:
      RequireInterior(p, "entropy");
      return ((p.array() / q.array()).log() + 1.0).matrix();
    case DivergenceKind::kTotalVariation: {
      Eigen::VectorXd g(n);
      for (int a = 0; a < n; ++a) {
        const double d = p[a] - q[a];
        g[a] = d > 0.0 ? 0.5 : (d < 0.0 ? -0.5 : 0.0);
      }
      return g;
    }
    case DivergenceKind::kRenyi: {
      RequireInterior(p, "renyi");
      const double alpha = reg.alpha;
      const Eigen::ArrayXd w =
          p.array().pow(alpha - 1.0) * q.array().pow(1.0 - alpha);
      const double total = (w * p.array()).sum();
      return (alpha / (alpha - 1.0) * w / total).matrix();
    }
    case DivergenceKind::kHellinger:
      RequireInterior(p, "hellinger");
      return (0.5 * (1.0 - (q.array() / p.array()).sqrt())).matrix();
    case DivergenceKind::kSquaredMean: {
      const Eigen::VectorXd x = SupportOf(reg, n);
      return 2.0 * x.dot(p - q) * x;
    }
  }
  return Eigen::VectorXd::Zero(n);
}

Eigen::MatrixXd RegHessian(const Regularizer& reg, const Eigen::VectorXd& p) {
  const int n = static_cast<int>(p.size());
  const Eigen::VectorXd q = ReferenceOf(reg, n);
  switch (EffectiveKind(reg)) {
    case DivergenceKind::kEntropy:
      RequireInterior(p, "entropy");
      return p.cwiseInverse().asDiagonal();
    case DivergenceKind::kTotalVariation:
      return Eigen::MatrixXd::Zero(n, n);
    case DivergenceKind::kRenyi: {
      RequireInterior(p, "renyi");
      const double alpha = reg.alpha;
      const double c = 1.0 / (alpha - 1.0);
      const Eigen::ArrayXd qw = q.array().pow(1.0 - alpha);
      const double total = (p.array().pow(alpha) * qw).sum();
      const Eigen::VectorXd g = (alpha * p.array().pow(alpha - 1.0) * qw).matrix();
      const Eigen::VectorXd diag =
          (alpha * (alpha - 1.0) * p.array().pow(alpha - 2.0) * qw).matrix();
      Eigen::MatrixXd h = Eigen::MatrixXd(diag.asDiagonal()) / total -
                          g * g.transpose() / (total * total);
      return c * h;
    }
    case DivergenceKind::kHellinger: {
      RequireInterior(p, "hellinger");
      const Eigen::VectorXd diag =
          (0.25 * q.array().sqrt() * p.array().pow(-1.5)).matrix();
      return diag.asDiagonal();
    }
    case DivergenceKind::kSquaredMean: {
      const Eigen::VectorXd x = SupportOf(reg, n);
      return 2.0 * x * x.transpose();
    }
  }
  return Eigen::MatrixXd::Zero(n, n);
}

double PerturbedObjective(const Regularizer& reg, const Eigen::VectorXd& u,
                          const Eigen::VectorXd& p) {
  return reg.lambda * p.dot(u) - RegValue(reg, p);
}

Eigen::VectorXd QrEntropy(double lambda, const Eigen::VectorXd& u,
                          const Eigen::VectorXd& reference) {
  return WeightedSoftmax(reference, lambda * u);
}

Eigen::VectorXd QrTotalVariation(double lambda, const Eigen::VectorXd& u,
                                 const Eigen::VectorXd& reference) {
  // Separable KKT with multiplier mu for the sum constraint (objective scaled
  // by 2): coordinate a maximizes p (2 lambda u_a - mu) - |p - q_a| over
  // [0, 1], a concave piecewise-linear function with slopes
  // 2 lambda u_a - mu + 1 on [0, q_a] and 2 lambda u_a - mu - 1 on [q_a, 1].
  // Its maximizer set is {0}, [0, q_a], {q_a}, [q_a, 1] or {1} as mu passes
  // the breakpoints 2 lambda u_a + 1 and 2 lambda u_a - 1.
  const Eigen::Index n = u.size();
  const Eigen::VectorXd& q = reference;
  std::vector<double> upper(n), lower(n);
  std::vector<double> candidates;
  for (Eigen::Index a = 0; a < n; ++a) {
    upper[a] = 2.0 * lambda * u[a] + 1.0;
    lower[a] = 2.0 * lambda * u[a] - 1.0;
    candidates.push_back(upper[a]);
    candidates.push_back(lower[a]);
  }
  std::sort(candidates.begin(), candidates.end(), std::greater<>());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  // Interior points between consecutive breakpoints, where every maximizer is
  // a singleton.
  const std::size_t num_breaks = candidates.size();
  for (std::size_t j = 0; j + 1 < num_breaks; ++j) {
    candidates.push_back(0.5 * (candidates[j] + candidates[j + 1]));
  }
  std::sort(candidates.begin(), candidates.end(), std::greater<>());

  Eigen::VectorXd lo(n), hi(n);
  auto intervals = [&](double mu) {
    for (Eigen::Index a = 0; a < n; ++a) {
      if (mu > upper[a]) {
        lo[a] = hi[a] = 0.0;
      } else if (mu == upper[a]) {
        lo[a] = 0.0;
        hi[a] = q[a];
      } else if (mu > lower[a]) {
        lo[a] = hi[a] = q[a];
      } else if (mu == lower[a]) {
        lo[a] = q[a];
        hi[a] = 1.0;
      } else {
        lo[a] = hi[a] = 1.0;
      }
    }
  };

  constexpr double kSlack = 1e-12;
  bool found = false;
  for (double mu : candidates) {
    intervals(mu);
    if (lo.sum() <= 1.0 + kSlack && hi.sum() >= 1.0 - kSlack) {
      found = true;
      break;
    }
  }
  if (!found) throw NumericalError("total variation response: no feasible multiplier");

  // Start from the lower ends and hand the remaining mass to the coordinates
  // with room left, in proportion to the reference, capped at their upper end.
  Eigen::VectorXd p = lo;
  double remaining = 1.0 - p.sum();
  for (Eigen::Index round = 0; round <= n && remaining > kSlack; ++round) {
    double weight = 0.0;
    for (Eigen::Index a = 0; a < n; ++a) {
      if (hi[a] - p[a] > 0.0) weight += q[a];
    }
    if (weight <= 0.0) break;
    const double per_weight = remaining / weight;
    for (Eigen::Index a = 0; a < n; ++a) {
      const double room = hi[a] - p[a];
      if (room > 0.0) {
        const double add = std::min(room, per_weight * q[a]);
        p[a] += add;
        remaining -= add;
      }
    }
  }
  p = p.cwiseMax(0.0);
  return p / p.sum();
}

Eigen::VectorXd QrRenyi(double lambda, double alpha, const Eigen::VectorXd& u,
                        const Eigen::VectorXd& reference) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ValidationError("renyi alpha must lie in (0, 1]");
  }
  if (std::abs(alpha - 1.0) < kRenyiEntropyAlias) {
    return QrEntropy(lambda, u, reference);
  }
  // p_a is proportional to q_a d_a^(-1/(1-alpha)) with d_a = mu - lambda u_a,
  // and mu solves sum q d^(-alpha/(1-alpha)) / sum q d^(-1/(1-alpha)) =
  // alpha / (1 - alpha). Both sums are evaluated relative to the smallest
  // distance (which is delta itself) so no power overflows.
  const double outer = 1.0 / (1.0 - alpha);
  const double inner = alpha / (1.0 - alpha);
  const Eigen::ArrayXd q = reference.array();
  auto excess = [&](double delta) {
    const Eigen::ArrayXd r = Distances(delta, lambda, u).array() / delta;
    const double ratio =
        delta * (q * r.pow(-inner)).sum() / (q * r.pow(-outer)).sum();
    return inner - ratio;
  };
  const double delta =
      SolveOffset(excess, lambda * u.maxCoeff(), "renyi response");
  const Eigen::ArrayXd r = Distances(delta, lambda, u).array() / delta;
  Eigen::VectorXd p = (q * r.pow(-outer)).matrix();
  return p / p.sum();
}

Eigen::VectorXd QrHellinger(double lambda, const Eigen::VectorXd& u,
                            const Eigen::VectorXd& reference) {
  // Stationarity gives p_a = q_a / (4 d_a^2), d_a = mu - lambda u_a, with mu
  // the root of sum q_a / d_a^2 = 4. For the uniform reference this is
  // p_a = 1 / (4 n d_a^2) and sum 1 / d_a^2 = 4 n.
  const Eigen::ArrayXd q = reference.array();
  auto excess = [&](double delta) {
    const Eigen::ArrayXd d = Distances(delta, lambda, u).array();
    return (q / d.square()).sum() - 4.0;
  };
  const double delta =
      SolveOffset(excess, lambda * u.maxCoeff(), "hellinger response");
  const Eigen::ArrayXd d = Distances(delta, lambda, u).array();
  Eigen::VectorXd p = (q / (4.0 * d.square())).matrix();
  return p / p.sum();
}

Eigen::VectorXd QrSquaredMean(double lambda, const Eigen::VectorXd& u,
                              const Eigen::VectorXd& reference,
                              const Eigen::VectorXd& support_points) {
  // max lambda <u, p> - (x^T p - m)^2 with m = x^T q. For a fixed mean y the
  // best lambda <u, p> is the upper concave hull g(y) of the points
  // (x_a, lambda u_a), so it remains to minimize (y - m)^2 - g(y), a convex
  // piecewise quadratic, one hull segment at a time.
  const Eigen::VectorXd& x = support_points;
  const Eigen::Index n = u.size();
  if (x.size() != n || reference.size() != n) {
    throw DimensionError("squared-mean response: size mismatch");
  }
  if (lambda == 0.0) return reference;
  const double m = x.dot(reference);

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return x[a] < x[b] || (x[a] == x[b] && u[a] > u[b]);
  });
  std::vector<Eigen::Index> hull;
  for (Eigen::Index a : order) {
    if (!hull.empty() && x[hull.back()] == x[a]) continue;
    // Pop while the last hull point lies on or below the chord to a.
    while (hull.size() >= 2) {
      const Eigen::Index o = hull[hull.size() - 2], b = hull.back();
      const double cross =
          (x[b] - x[o]) * (u[a] - u[o]) - (u[b] - u[o]) * (x[a] - x[o]);
      if (cross >= 0.0) hull.pop_back();
      else break;
    }
    hull.push_back(a);
  }

  Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
  auto cost_at_vertex = [&](Eigen::Index a) {
    return (x[a] - m) * (x[a] - m) - lambda * u[a];
  };
  Eigen::Index best_vertex = hull.front();
  double best = cost_at_vertex(best_vertex);
  for (Eigen::Index a : hull) {
    if (cost_at_vertex(a) < best) {
      best = cost_at_vertex(a);
      best_vertex = a;
    }
  }
  p[best_vertex] = 1.0;
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    const Eigen::Index a = hull[k], b = hull[k + 1];
    const double width = x[b] - x[a];
    const double slope = lambda * (u[b] - u[a]) / width;
    const double y = m + 0.5 * slope;
    if (!(y > x[a] && y < x[b])) continue;
    const double weight = (y - x[a]) / width;
    const double cost =
        (y - m) * (y - m) - lambda * (u[a] + (u[b] - u[a]) * weight);
    if (cost < best) {
      best = cost;
      p.setZero();
      p[a] = 1.0 - weight;
      p[b] = weight;
    }
  }
  return p;
}

Eigen::VectorXd QuantalResponse(const Regularizer& reg,
                                const Eigen::VectorXd& u) {
  const int n = static_cast<int>(u.size());
  ValidateRegularizer(reg, n);
  const Eigen::VectorXd q = ReferenceOf(reg, n);
  switch (EffectiveKind(reg)) {
    case DivergenceKind::kEntropy:
      return QrEntropy(reg.lambda, u, q);
    case DivergenceKind::kTotalVariation:
      return QrTotalVariation(reg.lambda, u, q);
    case DivergenceKind::kRenyi:
      return QrRenyi(reg.lambda, reg.alpha, u, q);
    case DivergenceKind::kHellinger:
      return QrHellinger(reg.lambda, u, q);
    case DivergenceKind::kSquaredMean:
      return QrSquaredMean(reg.lambda, u, q, SupportOf(reg, n));
  }
  return q;
}

double BestResponseValue(const Regularizer& reg, const Eigen::VectorXd& u) {
  const int n = static_cast<int>(u.size());
  if (EffectiveKind(reg) == DivergenceKind::kEntropy) {
    ValidateRegularizer(reg, n);
    return WeightedLogSumExp(ReferenceOf(reg, n), reg.lambda * u);
  }
  return PerturbedObjective(reg, u, QuantalResponse(reg, u));
}

namespace {

// Lagrangian dual of the total variation response: for any mu,
//   mu + sum_a max_{p in [0, 1]} p (lambda u_a - mu) - 1/2 |p - q_a|
// bounds the optimum from above. The inner maximum is attained at 0, q_a or 1.
double TotalVariationDual(double mu, double lambda, const Eigen::VectorXd& u,
                          const Eigen::VectorXd& q) {
  double total = mu;
  for (Eigen::Index a = 0; a < u.size(); ++a) {
    const double slope = lambda * u[a] - mu;
    total += std::max({-0.5 * q[a], q[a] * slope, slope - 0.5 * (1.0 - q[a])});
  }
  return total;
}

double TotalVariationDualMinimum(double lambda, const Eigen::VectorXd& u,
                                 const Eigen::VectorXd& q) {
  // Golden-section search; the dual is convex in mu and its minimizer lies
  // within half a unit of lambda * [min u, max u].
  double lo = lambda * u.minCoeff() - 2.0;
  double hi = lambda * u.maxCoeff() + 2.0;
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = TotalVariationDual(x1, lambda, u, q);
  double f2 = TotalVariationDual(x2, lambda, u, q);
  for (int it = 0; it < 300 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = TotalVariationDual(x1, lambda, u, q);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = TotalVariationDual(x2, lambda, u, q);
    }
  }
  return std::min(f1, f2);
}

NumericResponse NumericTotalVariation(const Regularizer& reg,
                                      const Eigen::VectorXd& u, double tol,
                                      int max_iterations) {
  const int n = static_cast<int>(u.size());
  const Eigen::VectorXd q = ReferenceOf(reg, n);
  const double bound = TotalVariationDualMinimum(reg.lambda, u, q);

  NumericResponse best;
  best.p = q;
  best.objective = PerturbedObjective(reg, u, q);
  Eigen::VectorXd log_p = q.array().log().matrix();
  Eigen::VectorXd p = q;
  Eigen::VectorXd tail_sum = Eigen::VectorXd::Zero(n);
  int tail_count = 0;
  int window_end = 2;
  const double scale = 1.0 / (reg.lambda * (u.maxCoeff() - u.minCoeff()) + 1.0);
  int it = 0;
  for (; it < max_iterations && bound - best.objective > tol; ++it) {
    const Eigen::VectorXd g = reg.lambda * u - RegGradient(reg, p);
    log_p += scale / std::sqrt(it + 1.0) * g;
    log_p.array() -= log_p.maxCoeff();
    p = log_p.array().exp().matrix();
    p /= p.sum();
    const double value = PerturbedObjective(reg, u, p);
    if (value > best.objective) {
      best.objective = value;
      best.p = p;
    }
    tail_sum += p;
    ++tail_count;
    if (it + 1 == window_end) {
      // Average over the second half of each doubling window.
      const Eigen::VectorXd avg = tail_sum / tail_count;
      const double avg_value = PerturbedObjective(reg, u, avg);
      if (avg_value > best.objective) {
        best.objective = avg_value;
        best.p = avg;
      }
      tail_sum.setZero();
      tail_count = 0;
      window_end *= 2;
    }
  }
  best.iterations = it;
  best.gap = std::max(0.0, bound - best.objective);
  best.converged = best.gap <= tol;
  return best;
}

}  // namespace

NumericResponse QrNumeric(const Regularizer& reg, const Eigen::VectorXd& u,
                          double tol, int max_iterations) {
  const int n = static_cast<int>(u.size());
  ValidateRegularizer(reg, n);
  if (IsNonsmooth(reg)) return NumericTotalVariation(reg, u, tol, max_iterations);

  auto objective = [&](const Eigen::VectorXd& p) {
    return PerturbedObjective(reg, u, p);
  };
  NumericResponse out;
  Eigen::VectorXd p = ReferenceOf(reg, n);
  double value = objective(p);
  double step = 1.0;
  int it = 0;
  for (; it < max_iterations; ++it) {
    const Eigen::VectorXd g = reg.lambda * u - RegGradient(reg, p);
    out.gap = g.maxCoeff() - p.dot(g);
    if (out.gap <= tol) {
      out.converged = true;
      break;
    }
    // Backtracking: halve the step until the mirror step satisfies an Armijo
    // condition, then let it grow again. Once the predicted increase drops
    // below the rounding level of the objective, a step that shrinks the
    // pure-direction gap is accepted instead.
    const double rounding = 1e-14 * (1.0 + std::abs(value));
    bool accepted = false;
    while (step > 1e-300) {
      const Eigen::VectorXd next =
          WeightedSoftmax(p, step * (g.array() - g.maxCoeff()).matrix());
      if (next != p && (next.minCoeff() > 0.0 || !IsBoundarySingular(reg))) {
        const double next_value = objective(next);
        const double predicted = g.dot(next - p);
        bool ok = next_value >= value + 1e-4 * predicted;
        if (!ok && predicted <= rounding &&
            next_value >= value - rounding) {
          const Eigen::VectorXd next_g = reg.lambda * u - RegGradient(reg, next);
          ok = next_g.maxCoeff() - next.dot(next_g) < out.gap;
        }
        if (ok) {
          p = next;
          value = next_value;
          step = std::min(step * 1.5, 1e8);
          accepted = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  out.p = p;
  out.objective = value;
  out.iterations = it;
  return out;
}

}  // namespace gqre
