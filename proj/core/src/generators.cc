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

#include "gqre/generators.h"

#include <string>
#include <vector>

#include <Eigen/SVD>

#include "gqre/errors.h"

namespace gqre {
namespace {

Eigen::MatrixXd GaussianMatrix(int rows, int cols, Rng& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = rng.Normal();
  }
  return m;
}

Eigen::MatrixXd SkewPart(const Eigen::MatrixXd& m) {
  return 0.5 * (m - m.transpose());
}

std::vector<double> RowMajor(const Eigen::MatrixXd& m) {
  std::vector<double> flat;
  flat.reserve(m.size());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) flat.push_back(m(r, c));
  }
  return flat;
}

Game FromRaw(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
             GameMetadata metadata) {
  Game raw = Game::Bimatrix(a, b);
  metadata.pre_normalization =
      std::vector<std::vector<double>>{RowMajor(a), RowMajor(b)};
  Game game = NormalizeUtilities(raw);
  game.metadata = std::move(metadata);
  return game;
}

}  // namespace

Game MatchingPennies() {
  Eigen::MatrixXd a(2, 2);
  a << 1.0, -1.0, -1.0, 1.0;
  GameMetadata meta;
  meta.generator = "matching-pennies";
  return FromRaw(a, -a, std::move(meta));
}

Game StronglyMonotone(int n, double mu, double skew, Rng& rng) {
  if (n < 1) throw ValidationError("monotone game needs n >= 1");
  if (!(mu > 0.0)) throw ValidationError("monotone game needs mu > 0");
  if (!(skew >= 0.0)) throw ValidationError("monotone game needs skew >= 0");
  GameMetadata meta;
  meta.generator = "monotone";
  meta.seed = rng.seed();
  meta.mu = mu;
  meta.skew = skew;

  Eigen::MatrixXd k = SkewPart(GaussianMatrix(n, n, rng));
  double norm = 0.0;
  if (n > 1) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(k);
    norm = svd.singularValues()(0);
  }
  if (skew == 0.0 || norm == 0.0) {
    k.setZero();
  } else {
    k *= skew / norm;
  }
  // K has an exactly zero diagonal, so A + B = 2 mu I holds without rounding.
  const Eigen::MatrixXd s = mu * Eigen::MatrixXd::Identity(n, n);
  return FromRaw(s + k, s - k, std::move(meta));
}

Game RankK(int m, int k, Rng& rng) {
  if (m < 1 || k < 1 || k > m) {
    throw ValidationError("rank-k game needs 1 <= k <= m, got m=" +
                          std::to_string(m) + " k=" + std::to_string(k));
  }
  GameMetadata meta;
  meta.generator = "rank-k";
  meta.seed = rng.seed();
  meta.k = k;
  const Eigen::MatrixXd u = GaussianMatrix(m, k, rng);
  const Eigen::MatrixXd v = GaussianMatrix(m, k, rng);
  const Eigen::MatrixXd low_rank = u * v.transpose();
  const Eigen::MatrixXd s = SkewPart(GaussianMatrix(m, m, rng));
  return FromRaw(low_rank + s, low_rank - s, std::move(meta));
}

}  // namespace gqre
