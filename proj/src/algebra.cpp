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

// algebra.cpp — Implementation of the dense bipartite operator algebra.

#include "corrwitness/algebra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

namespace corrwitness {

// --------------------------- small constants ---------------------------

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Vector basis_ket(Index k, Index d) {
  if (k < 0 || k >= d) throw std::invalid_argument("basis_ket: index out of range");
  Vector v = Vector::Zero(d);
  v(k) = 1.0;
  return v;
}

// --------------------------- tensor structure ---------------------------

Matrix tensor(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

Matrix partial_trace_env(const Matrix& m, const SpaceDims& dims) {
  if (m.rows() != dims.total() || m.cols() != dims.total())
    throw std::invalid_argument("partial_trace_env: dims do not match matrix");
  const Index ds = dims.d_system, de = dims.d_env;
  Matrix out = Matrix::Zero(ds, ds);
  for (Index i = 0; i < ds; ++i)
    for (Index j = 0; j < ds; ++j)
      for (Index l = 0; l < de; ++l) out(i, j) += m(i * de + l, j * de + l);
  return out;
}

Matrix partial_trace_system(const Matrix& m, const SpaceDims& dims) {
  if (m.rows() != dims.total() || m.cols() != dims.total())
    throw std::invalid_argument("partial_trace_system: dims do not match matrix");
  const Index ds = dims.d_system, de = dims.d_env;
  Matrix out = Matrix::Zero(de, de);
  for (Index k = 0; k < de; ++k)
    for (Index l = 0; l < de; ++l)
      for (Index j = 0; j < ds; ++j) out(k, l) += m(j * de + k, j * de + l);
  return out;
}

Matrix permute_qubits(const Matrix& m, const std::vector<int>& source_of) {
  const int n = static_cast<int>(source_of.size());
  const Index dim = Index(1) << n;
  if (m.rows() != dim || m.cols() != dim)
    throw std::invalid_argument("permute_qubits: matrix is not 2^n for the given permutation");
  std::vector<bool> seen(n, false);
  for (int s : source_of) {
    if (s < 0 || s >= n || seen[s])
      throw std::invalid_argument("permute_qubits: source_of is not a permutation");
    seen[s] = true;
  }
  // target index whose bit at target position t equals the source bit at
  // source_of[t]; position 0 is the most significant bit.
  std::vector<Index> to_target(dim);
  for (Index i = 0; i < dim; ++i) {
    Index j = 0;
    for (int t = 0; t < n; ++t) {
      const int src = source_of[t];
      const Index bit = (i >> (n - 1 - src)) & 1;
      j |= bit << (n - 1 - t);
    }
    to_target[i] = j;
  }
  Matrix out(dim, dim);
  for (Index r = 0; r < dim; ++r)
    for (Index c = 0; c < dim; ++c) out(to_target[r], to_target[c]) = m(r, c);
  return out;
}

int operator_schmidt_rank(const Matrix& m, const SpaceDims& dims, double rel_tol) {
  if (m.rows() != dims.total() || m.cols() != dims.total())
    throw std::invalid_argument("operator_schmidt_rank: dims do not match matrix");
  const Index ds = dims.d_system, de = dims.d_env;
  // Realignment: entry ((i,k),(j,l)) of m goes to ((i,j),(k,l)).
  Matrix r(ds * ds, de * de);
  for (Index i = 0; i < ds; ++i)
    for (Index j = 0; j < ds; ++j)
      for (Index k = 0; k < de; ++k)
        for (Index l = 0; l < de; ++l)
          r(i * ds + j, k * de + l) = m(i * de + k, j * de + l);
  Eigen::JacobiSVD<Matrix> svd(r);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0)) ++rank;
  return rank;
}

// --------------------------- spectra and norms ---------------------------

Eigensystem hermitian_eig(const Matrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw std::invalid_argument("hermitian_eig: matrix must be square and non-empty");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol.herm)
    throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigen decomposition failed");
  const Index n = m.rows();
  Eigensystem out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Index i = 0; i < n; ++i) {  // Eigen sorts ascending; flip to descending
    out.values(i) = solver.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

double half_trace_norm(const Matrix& m, const Tolerances& tol) {
  const Eigensystem es = hermitian_eig(m, tol);
  return 0.5 * es.values.cwiseAbs().sum();
}

double trace_distance(const Matrix& a, const Matrix& b, const Tolerances& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("trace_distance: operands have different shapes");
  return half_trace_norm(a - b, tol);
}

// --------------------------- channels and evolution ---------------------------

DensityOperator apply_unitary(const DensityOperator& rho, const UnitaryOperator& u) {
  if (u.dim() != rho.dim())
    throw std::invalid_argument("apply_unitary: unitary and state dimensions differ");
  return DensityOperator::unchecked(u.matrix() * rho.matrix() * u.matrix().adjoint(),
                                    rho.space());
}

DensityOperator apply_kraus(const DensityOperator& rho, const KrausMap& k) {
  if (k.d_in() != rho.dim())
    throw std::invalid_argument("apply_kraus: map input dimension does not match state");
  Matrix out = Matrix::Zero(k.d_out(), k.d_out());
  for (const Matrix& e : k.ops()) out += e * rho.matrix() * e.adjoint();
  return DensityOperator::validated(std::move(out));
}

DensityOperator apply_kraus_local(const DensityOperator& rho_se, const KrausMap& k) {
  const SpaceDims& dims = rho_se.bipartite();
  if (k.d_in() != dims.d_system)
    throw std::invalid_argument("apply_kraus_local: map does not act on the system factor");
  const Matrix id = Matrix::Identity(dims.d_env, dims.d_env);
  Matrix out = Matrix::Zero(k.d_out() * dims.d_env, k.d_out() * dims.d_env);
  for (const Matrix& e : k.ops()) {
    const Matrix lifted = tensor(e, id);
    out += lifted * rho_se.matrix() * lifted.adjoint();
  }
  return DensityOperator::unchecked(std::move(out), SpaceDims(k.d_out(), dims.d_env));
}

UnitaryOperator expm_hermitian(const HermitianOperator& h, double t) {
  const Eigensystem es = hermitian_eig(h.matrix());
  Vector phases(es.values.size());
  for (Index i = 0; i < es.values.size(); ++i)
    phases(i) = std::exp(Complex(0, -es.values(i) * t));
  return UnitaryOperator::unchecked(es.vectors * phases.asDiagonal() * es.vectors.adjoint());
}

KrausMap kraus_compose(const KrausMap& second, const KrausMap& first) {
  if (second.d_in() != first.d_out())
    throw std::invalid_argument("kraus_compose: intermediate dimensions do not match");
  std::vector<Matrix> ops;
  ops.reserve(second.ops().size() * first.ops().size());
  for (const Matrix& b : second.ops())
    for (const Matrix& a : first.ops()) {
      Matrix prod = b * a;
      if (prod.cwiseAbs().maxCoeff() > 0.0) ops.push_back(std::move(prod));
    }
  if (ops.empty()) ops.push_back(Matrix::Zero(second.d_out(), first.d_in()));
  return KrausMap::unchecked(std::move(ops));
}

}  // namespace corrwitness
