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

// types.cpp — Construction-time validation for the operator wrappers.

#include "corrwitness/types.hpp"

#include <Eigen/Eigenvalues>

namespace corrwitness {
namespace {

void check_square(const Matrix& m, const char* who) {
  if (m.rows() == 0 || m.rows() != m.cols())
    throw std::invalid_argument(std::string(who) + ": matrix must be square and non-empty");
}

void check_space(const Matrix& m, const std::optional<SpaceDims>& space, const char* who) {
  if (space && space->total() != m.rows())
    throw std::invalid_argument(std::string(who) +
                                ": dims do not factor the matrix dimension");
}

double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

// --------------------------- DensityOperator ---------------------------

DensityOperator DensityOperator::validated(Matrix m, std::optional<SpaceDims> space,
                                           const Tolerances& tol) {
  check_square(m, "DensityOperator");
  check_space(m, space, "DensityOperator");
  if (hermiticity_defect(m) > tol.herm)
    throw std::invalid_argument("DensityOperator: matrix is not Hermitian");
  if (std::abs(m.trace().real() - 1.0) > tol.trace || std::abs(m.trace().imag()) > tol.trace)
    throw std::invalid_argument("DensityOperator: trace is not 1");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("DensityOperator: eigen decomposition failed");
  if (solver.eigenvalues().minCoeff() < -tol.psd)
    throw std::invalid_argument("DensityOperator: matrix is not positive semidefinite");
  return DensityOperator(std::move(m), space);
}

DensityOperator DensityOperator::unchecked(Matrix m, std::optional<SpaceDims> space) {
  return DensityOperator(std::move(m), space);
}

const SpaceDims& DensityOperator::bipartite() const {
  if (!space_)
    throw std::invalid_argument("DensityOperator: no system/environment split attached");
  return *space_;
}

// --------------------------- HermitianOperator ---------------------------

HermitianOperator HermitianOperator::validated(Matrix m, std::optional<SpaceDims> space,
                                               const Tolerances& tol) {
  check_square(m, "HermitianOperator");
  check_space(m, space, "HermitianOperator");
  if (hermiticity_defect(m) > tol.herm)
    throw std::invalid_argument("HermitianOperator: matrix is not Hermitian");
  return HermitianOperator(std::move(m), space);
}

HermitianOperator HermitianOperator::unchecked(Matrix m, std::optional<SpaceDims> space) {
  return HermitianOperator(std::move(m), space);
}

const SpaceDims& HermitianOperator::bipartite() const {
  if (!space_)
    throw std::invalid_argument("HermitianOperator: no system/environment split attached");
  return *space_;
}

// --------------------------- UnitaryOperator ---------------------------

UnitaryOperator UnitaryOperator::validated(Matrix m, const Tolerances& tol) {
  check_square(m, "UnitaryOperator");
  const Matrix defect = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
  if (defect.cwiseAbs().maxCoeff() > tol.unit)
    throw std::invalid_argument("UnitaryOperator: matrix is not unitary");
  return UnitaryOperator(std::move(m));
}

UnitaryOperator UnitaryOperator::unchecked(Matrix m) { return UnitaryOperator(std::move(m)); }

// --------------------------- KrausMap ---------------------------

KrausMap KrausMap::validated(std::vector<Matrix> ops, const Tolerances& tol) {
  if (ops.empty()) throw std::invalid_argument("KrausMap: no Kraus operators given");
  const Index din = ops.front().cols();
  const Index dout = ops.front().rows();
  if (din < 1 || dout < 1)
    throw std::invalid_argument("KrausMap: empty Kraus operator");
  Matrix sum = Matrix::Zero(din, din);
  for (const Matrix& e : ops) {
    if (e.cols() != din || e.rows() != dout)
      throw std::invalid_argument("KrausMap: inconsistent Kraus operator shapes");
    sum += e.adjoint() * e;
  }
  const Matrix defect = sum - Matrix::Identity(din, din);
  if (defect.cwiseAbs().maxCoeff() > tol.unit)
    throw std::invalid_argument("KrausMap: completeness sum is not the identity");
  return KrausMap(std::move(ops));
}

KrausMap KrausMap::unchecked(std::vector<Matrix> ops) { return KrausMap(std::move(ops)); }

}  // namespace corrwitness
