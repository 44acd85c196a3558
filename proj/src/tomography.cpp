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

// tomography.cpp — Informationally complete bases, the preparation protocol,
// and the linearity criterion for reduced dynamics.

#include "corrwitness/tomography.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "corrwitness/protocols.hpp"

namespace corrwitness::tomography {

OperatorBasis build_basis(Index d_system) {
  if (d_system < 2) throw std::invalid_argument("build_basis: dimension must be >= 2");
  OperatorBasis basis;
  basis.d = d_system;
  basis.states.reserve(static_cast<std::size_t>(d_system * d_system));
  for (Index i = 0; i < d_system; ++i) {
    const Vector v = basis_ket(i, d_system);
    basis.states.push_back(v * v.adjoint());
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Index i = 0; i < d_system; ++i) {
    for (Index j = i + 1; j < d_system; ++j) {
      Vector plus = inv_sqrt2 * (basis_ket(i, d_system) + basis_ket(j, d_system));
      basis.states.push_back(plus * plus.adjoint());
      Vector plus_i =
          inv_sqrt2 * (basis_ket(i, d_system) + Complex(0, 1) * basis_ket(j, d_system));
      basis.states.push_back(plus_i * plus_i.adjoint());
    }
  }

  const Index count = static_cast<Index>(basis.states.size());
  basis.gram.resize(count, count);
  for (Index a = 0; a < count; ++a)
    for (Index b = 0; b < count; ++b)
      basis.gram(a, b) =
          (basis.states[static_cast<std::size_t>(a)] * basis.states[static_cast<std::size_t>(b)])
              .trace()
              .real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(basis.gram);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("build_basis: Gram eigendecomposition failed");
  const double smallest = solver.eigenvalues().minCoeff();
  if (smallest <= 0.0)
    throw std::runtime_error("build_basis: Gram matrix is singular");
  basis.condition = solver.eigenvalues().maxCoeff() / smallest;
  return basis;
}

Eigen::VectorXd expand_in_basis(const Matrix& rho_s, const OperatorBasis& basis,
                                const Tolerances& tol) {
  const Index count = static_cast<Index>(basis.states.size());
  if (rho_s.rows() != basis.d || rho_s.cols() != basis.d)
    throw std::invalid_argument("expand_in_basis: operator dimension does not match basis");
  if (basis.condition > 1e6)
    throw std::invalid_argument("expand_in_basis: basis Gram matrix is ill-conditioned");

  // Basis elements expand exactly; this keeps predictions on recorded
  // preparations bitwise equal to the recorded outputs.
  for (Index i = 0; i < count; ++i) {
    if ((rho_s.array() == basis.states[static_cast<std::size_t>(i)].array()).all()) {
      Eigen::VectorXd a = Eigen::VectorXd::Zero(count);
      a(i) = 1.0;
      return a;
    }
  }

  Eigen::VectorXd b(count);
  for (Index i = 0; i < count; ++i)
    b(i) = (basis.states[static_cast<std::size_t>(i)] * rho_s).trace().real();
  const Eigen::VectorXd a = basis.gram.ldlt().solve(b);

  Matrix recon = Matrix::Zero(basis.d, basis.d);
  for (Index i = 0; i < count; ++i)
    recon += a(i) * basis.states[static_cast<std::size_t>(i)];
  if ((recon - rho_s).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("expand_in_basis: operator is outside the basis span");
  if (std::abs(a.sum() - 1.0) > 1e-8)
    throw std::invalid_argument("expand_in_basis: coefficients do not sum to one");
  return a;
}

// --------------------------- tomography record ---------------------------

TomographyRecord run_tomography(const DensityOperator& rho_se1, const UnitaryOperator& u,
                                const std::vector<KrausMap>& basis_maps,
                                const Tolerances& tol) {
  const SpaceDims& dims = rho_se1.bipartite();
  if (u.dim() != dims.total())
    throw std::invalid_argument("run_tomography: unitary has wrong dimension");
  TomographyRecord record;
  record.basis = build_basis(dims.d_system);
  record.dims = dims;
  record.u = u.matrix();
  const std::size_t count = record.basis.states.size();
  if (basis_maps.size() != count)
    throw std::invalid_argument("run_tomography: need one preparation map per basis state");

  record.prepared_se.reserve(count);
  record.outputs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const DensityOperator prepared = apply_kraus_local(rho_se1, basis_maps[i]);
    const Matrix marginal = partial_trace_env(prepared.matrix(), dims);
    if ((marginal - record.basis.states[i]).cwiseAbs().maxCoeff() > 1e-10)
      throw std::invalid_argument(
          "run_tomography: preparation map does not realize its basis state");
    const Matrix evolved = record.u * prepared.matrix() * record.u.adjoint();
    record.prepared_se.push_back(prepared.matrix());
    record.outputs.push_back(partial_trace_env(evolved, dims));
  }
  record.y_norms.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    record.y_norms.push_back(correlation_residual_norm(record, record.prepared_se[i], tol));
  return record;
}

TomographyRecord run_tomography(const DensityOperator& rho_se1, const UnitaryOperator& u,
                                const Tolerances& tol) {
  const SpaceDims& dims = rho_se1.bipartite();
  const OperatorBasis basis = build_basis(dims.d_system);
  std::vector<KrausMap> maps;
  maps.reserve(basis.states.size());
  for (const Matrix& state : basis.states)
    maps.push_back(protocols::constant_channel(state, dims.d_system, tol));
  return run_tomography(rho_se1, u, maps, tol);
}

// --------------------------- prediction and linearity ---------------------------

LinearPrediction predict_linear(const TomographyRecord& record, const Matrix& rho_s_query,
                                const Tolerances& tol) {
  const Eigen::VectorXd a = expand_in_basis(rho_s_query, record.basis, tol);
  LinearPrediction pred;
  pred.matrix = Matrix::Zero(record.dims.d_system, record.dims.d_system);
  for (Index i = 0; i < a.size(); ++i)
    pred.matrix += a(i) * record.outputs[static_cast<std::size_t>(i)];
  const Eigensystem es = hermitian_eig(pred.matrix, tol);
  pred.min_eigenvalue = es.values.minCoeff();
  pred.trace_error = std::abs(pred.matrix.trace().real() - 1.0);
  pred.positive = pred.min_eigenvalue >= -tol.psd;
  return pred;
}

double correlation_residual_norm(const TomographyRecord& record, const Matrix& rho_se_query,
                                 const Tolerances& tol) {
  if (rho_se_query.rows() != record.dims.total())
    throw std::invalid_argument("correlation_residual_norm: query has wrong dimension");
  const Eigen::VectorXd a =
      expand_in_basis(partial_trace_env(rho_se_query, record.dims), record.basis, tol);
  Matrix y = rho_se_query;
  for (Index i = 0; i < a.size(); ++i)
    y -= a(i) * record.prepared_se[static_cast<std::size_t>(i)];
  const Matrix evolved = record.u * y * record.u.adjoint();
  return half_trace_norm(partial_trace_env(evolved, record.dims), tol);
}

LinearityVerdict linearity_criterion(const TomographyRecord& record,
                                     const std::vector<DensityOperator>& queries,
                                     const Tolerances& tol) {
  LinearityVerdict verdict;
  verdict.y_norms.reserve(queries.size());
  for (const DensityOperator& q : queries) {
    const double norm = correlation_residual_norm(record, q.matrix(), tol);
    verdict.y_norms.push_back(norm);
    verdict.max_y_norm = std::max(verdict.max_y_norm, norm);
  }
  verdict.linear = verdict.max_y_norm <= tol.det;
  return verdict;
}

}  // namespace corrwitness::tomography
