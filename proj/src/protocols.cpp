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

// protocols.cpp — Scenario preparation and trace-distance bounds.

#include "corrwitness/protocols.hpp"

#include <sstream>

#include "corrwitness/algebra.hpp"

namespace corrwitness::protocols {

KrausMap constant_channel(const Matrix& target, Index d_in, const Tolerances& tol) {
  if (d_in < 1) throw std::invalid_argument("constant_channel: input dimension must be >= 1");
  const Eigensystem es = hermitian_eig(target, tol);
  std::vector<Matrix> ops;
  for (Index k = 0; k < es.values.size(); ++k) {
    if (es.values(k) <= 0.0) continue;
    const double amp = std::sqrt(es.values(k));
    for (Index j = 0; j < d_in; ++j) {
      Matrix e = Matrix::Zero(target.rows(), d_in);
      e.col(j) = amp * es.vectors.col(k);
      ops.push_back(std::move(e));
    }
  }
  return KrausMap::validated(std::move(ops), tol);
}

ScenarioPair prepare_product_replacement(const DensityOperator& rho_se,
                                         const Tolerances& tol) {
  const SpaceDims& dims = rho_se.bipartite();
  const Matrix rho_s = partial_trace_env(rho_se.matrix(), dims);
  const Matrix rho_e = partial_trace_system(rho_se.matrix(), dims);

  // Reset to |0><0|, then turn |0><0| into rho_S: composing the two local
  // channels realizes the replace-with-rho_S preparation.
  std::vector<Matrix> reset;
  for (Index k = 0; k < dims.d_system; ++k) {
    Matrix e = Matrix::Zero(dims.d_system, dims.d_system);
    e(0, k) = 1.0;
    reset.push_back(std::move(e));
  }
  const KrausMap to_zero = KrausMap::validated(std::move(reset), tol);
  const KrausMap prepare = constant_channel(rho_s, dims.d_system, tol);
  const KrausMap replace = kraus_compose(prepare, to_zero);

  const DensityOperator sigma = apply_kraus_local(rho_se, replace);
  const Matrix direct = tensor(rho_s, rho_e);
  if ((sigma.matrix() - direct).cwiseAbs().maxCoeff() > 1e-10)
    throw std::runtime_error(
        "prepare_product_replacement: channel output disagrees with rho_S x rho_E");
  return {rho_se, sigma, Provenance::product_replacement, false};
}

ScenarioPair dephase_in_eigenbasis(const DensityOperator& rho_se, const Tolerances& tol) {
  const SpaceDims& dims = rho_se.bipartite();
  const Matrix rho_s = partial_trace_env(rho_se.matrix(), dims);
  const Eigensystem es = hermitian_eig(rho_s, tol);
  const Index d = dims.d_system;
  const double gap_tol = tol.eig_scale * static_cast<double>(d);

  // Group degenerate eigenvalues; inside each group pick the orthonormal
  // basis closest to the computational one (project |k> onto the eigenspace
  // in lexicographic order and Gram-Schmidt the survivors).
  Matrix basis(d, d);
  bool degenerate = false;
  Index col = 0;
  for (Index start = 0; start < d;) {
    Index stop = start + 1;
    while (stop < d && es.values(stop - 1) - es.values(stop) <= gap_tol) ++stop;
    const Index size = stop - start;
    if (size == 1) {
      basis.col(col++) = es.vectors.col(start);
    } else {
      degenerate = true;
      Matrix proj = Matrix::Zero(d, d);
      for (Index i = start; i < stop; ++i)
        proj += es.vectors.col(i) * es.vectors.col(i).adjoint();
      Index found = 0;
      for (Index k = 0; k < d && found < size; ++k) {
        Vector v = proj * basis_ket(k, d);
        for (Index used = col; used < col + found; ++used)
          v -= basis.col(used) * (basis.col(used).adjoint() * v);
        const double norm = v.norm();
        if (norm > 1e-8) {
          basis.col(col + found) = v / norm;
          ++found;
        }
      }
      if (found != size)
        throw std::runtime_error("dephase_in_eigenbasis: eigenspace basis incomplete");
      col += size;
    }
    start = stop;
  }

  Matrix sigma = Matrix::Zero(rho_se.dim(), rho_se.dim());
  const Matrix id_env = Matrix::Identity(dims.d_env, dims.d_env);
  for (Index i = 0; i < d; ++i) {
    const Matrix proj = tensor(basis.col(i) * basis.col(i).adjoint(), id_env);
    sigma += proj * rho_se.matrix() * proj;
  }
  return {rho_se, DensityOperator::unchecked(std::move(sigma), dims),
          Provenance::local_map, degenerate};
}

double bound_rhs_full(const ScenarioPair& pair, const Tolerances& tol) {
  const SpaceDims& dims = pair.rho_se.bipartite();
  const Matrix& rho = pair.rho_se.matrix();
  const Matrix& sigma = pair.sigma_se.matrix();
  const Matrix rho_e = partial_trace_system(rho, dims);
  const Matrix sigma_e = partial_trace_system(sigma, dims);
  const double corr_rho =
      trace_distance(rho, tensor(partial_trace_env(rho, dims), rho_e), tol);
  const double corr_sigma =
      trace_distance(sigma, tensor(partial_trace_env(sigma, dims), sigma_e), tol);
  return corr_rho + corr_sigma + trace_distance(rho_e, sigma_e, tol);
}

std::pair<double, double> bound_rhs_R(const ScenarioPair& pair, const UnitaryOperator& u,
                                      const Tolerances& tol) {
  const SpaceDims& dims = pair.rho_se.bipartite();
  const Matrix rho_e = partial_trace_system(pair.rho_se.matrix(), dims);
  const Matrix sigma_e = partial_trace_system(pair.sigma_se.matrix(), dims);
  if ((rho_e - sigma_e).cwiseAbs().maxCoeff() > tol.herm)
    throw std::invalid_argument("bound_rhs_R: environment marginals differ");
  const Matrix r = witness::correlation_operator(pair.rho_se).matrix();
  const Matrix rbar = witness::correlation_operator(pair.sigma_se).matrix();
  return {witness::witness_norm(r, u, dims, tol),
          witness::witness_norm(rbar, u, dims, tol)};
}

// --------------------------- composite environments ---------------------------

TripartiteState TripartiteState::validated(Matrix m, Index d_s, Index d_b, Index d_c,
                                           const Tolerances& tol) {
  if (d_s < 2 || d_b < 2 || d_c < 2)
    throw std::invalid_argument("TripartiteState: factors must have dimension >= 2");
  DensityOperator rho = DensityOperator::validated(
      std::move(m), SpaceDims(d_s, d_b * d_c), tol);
  return {std::move(rho), d_s, d_b, d_c};
}

witness::DetectionReport detect_env_correlation(const TripartiteState& tri,
                                                const UnitaryOperator& u,
                                                const Tolerances& tol) {
  const SpaceDims se(tri.d_s, tri.d_b * tri.d_c);
  const SpaceDims bc(tri.d_b, tri.d_c);
  const Matrix& rho = tri.rho_sbc.matrix();
  if (u.dim() != se.total())
    throw std::invalid_argument("detect_env_correlation: unitary has wrong dimension");

  const Matrix rho_s = partial_trace_env(rho, se);
  const Matrix rho_bc = partial_trace_system(rho, se);
  if ((rho - tensor(rho_s, rho_bc)).cwiseAbs().maxCoeff() > tol.herm)
    throw std::invalid_argument(
        "detect_env_correlation: system factor is correlated with the environment");

  const Matrix rho_b = partial_trace_env(rho_bc, bc);
  const Matrix rho_c = partial_trace_system(rho_bc, bc);
  const Matrix sigma = tensor(rho_s, tensor(rho_b, rho_c));
  const Matrix r = sigma - rho;

  witness::DetectionReport rep;
  rep.bound = trace_distance(rho_bc, tensor(rho_b, rho_c), tol);
  rep.witness_value = witness::witness_norm(r, u, se, tol);
  rep.achieved = rep.witness_value;
  rep.detectable = rep.witness_value > tol.det;
  rep.unitary = u.matrix();
  if (r.cwiseAbs().maxCoeff() <= tol.zero_scale) {
    rep.unitary_id = "none";
    return rep;
  }
  const witness::EigenSplit split =
      witness::split_spectrum(HermitianOperator::unchecked(r, se), se.d_env, tol);
  rep.saturable = witness::is_saturable(split);
  rep.n = split.n;
  rep.m = split.m;
  rep.r = split.r;
  rep.unitary_id = "supplied";
  return rep;
}

witness::DetectionReport detect_env_correlation(const TripartiteState& tri,
                                                const Tolerances& tol) {
  const SpaceDims se(tri.d_s, tri.d_b * tri.d_c);
  const SpaceDims bc(tri.d_b, tri.d_c);
  const Matrix& rho = tri.rho_sbc.matrix();
  const Matrix rho_s = partial_trace_env(rho, se);
  const Matrix rho_bc = partial_trace_system(rho, se);
  if ((rho - tensor(rho_s, rho_bc)).cwiseAbs().maxCoeff() > tol.herm)
    throw std::invalid_argument(
        "detect_env_correlation: system factor is correlated with the environment");
  const Matrix rho_b = partial_trace_env(rho_bc, bc);
  const Matrix rho_c = partial_trace_system(rho_bc, bc);
  const Matrix r = tensor(rho_s, tensor(rho_b, rho_c)) - rho;
  if (r.cwiseAbs().maxCoeff() <= tol.zero_scale)
    throw domain_refusal("detect_env_correlation: environment parts are uncorrelated");
  const witness::EigenSplit split =
      witness::split_spectrum(HermitianOperator::unchecked(r, se), se.d_env, tol);
  witness::DetectionReport rep =
      detect_env_correlation(tri, witness::witness_unitary(split), tol);
  std::ostringstream os;
  os << "witness(n=" << split.n << ",m=" << split.m << ",r=" << split.r << ")";
  rep.unitary_id = os.str();
  return rep;
}

}  // namespace corrwitness::protocols
