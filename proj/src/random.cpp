// Copyright 2026 The corrwitness authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// random.cpp — Seeded state/unitary/channel sampling.

#include "corrwitness/random.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

namespace corrwitness {

double Rng::uniform() {
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Complex Rng::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return Complex(re, im);
}

Matrix Rng::gaussian_matrix(Index rows, Index cols) {
  Matrix g(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) g(i, j) = complex_gaussian();
  return g;
}

DensityOperator random_state(Index dim, Index rank, Rng& rng) {
  if (dim < 1 || rank < 1 || rank > dim)
    throw std::invalid_argument("random_state: need 1 <= rank <= dim");
  const Matrix g = rng.gaussian_matrix(dim, rank);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator::unchecked(std::move(rho));
}

DensityOperator random_state(Index dim, Index rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_state(dim, rank, rng);
}

UnitaryOperator random_unitary(Index dim, Rng& rng) {
  if (dim < 1) throw std::invalid_argument("random_unitary: dimension must be >= 1");
  const Matrix g = rng.gaussian_matrix(dim, dim);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fixing the phases of the R diagonal makes the distribution Haar.
  for (Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return UnitaryOperator::unchecked(std::move(q));
}

UnitaryOperator random_unitary(Index dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(dim, rng);
}

KrausMap random_kraus(Index dim, Index n_ops, Rng& rng) {
  if (dim < 1 || n_ops < 1)
    throw std::invalid_argument("random_kraus: dimensions must be >= 1");
  // Columns of a Haar unitary on dim*n_ops restricted to the first dim form
  // an isometry; its dim x dim blocks are a complete Kraus family.
  const UnitaryOperator big = random_unitary(dim * n_ops, rng);
  std::vector<Matrix> ops(n_ops);
  for (Index k = 0; k < n_ops; ++k)
    ops[k] = big.matrix().block(k * dim, 0, dim, dim);
  return KrausMap::unchecked(std::move(ops));
}

KrausMap random_kraus(Index dim, Index n_ops, std::uint64_t seed) {
  Rng rng(seed);
  return random_kraus(dim, n_ops, rng);
}

}  // namespace corrwitness
