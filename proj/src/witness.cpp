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

// witness.cpp — Correlation operator, spectrum split, and the witness /
// saturating unitary constructions.

#include "corrwitness/witness.hpp"

#include <algorithm>
#include <sstream>

namespace corrwitness::witness {
namespace {

// Columns of the primary class (descending |lambda|), then leftover primary
// vectors, then the secondary class: U maps the i-th column to slot |i>.
Matrix assemble(const Matrix& primary_vecs, const Matrix& secondary_vecs,
                const BlockFreedom* freedom, Index primary_block, Index total) {
  Matrix v(total, total);
  v.leftCols(primary_vecs.cols()) = primary_vecs;
  v.rightCols(secondary_vecs.cols()) = secondary_vecs;
  Matrix u = v.adjoint();
  if (freedom != nullptr) {
    const Index rest = total - primary_block;
    const Tolerances tol;
    if (freedom->primary.rows() != primary_block || freedom->primary.cols() != primary_block ||
        freedom->remainder.rows() != rest || freedom->remainder.cols() != rest)
      throw std::invalid_argument("witness_unitary: freedom blocks have wrong dimensions");
    auto unitarity = [&](const Matrix& w) {
      return (w.adjoint() * w - Matrix::Identity(w.rows(), w.cols())).cwiseAbs().maxCoeff();
    };
    if (unitarity(freedom->primary) > tol.unit || unitarity(freedom->remainder) > tol.unit)
      throw std::invalid_argument("witness_unitary: freedom blocks are not unitary");
    Matrix w = Matrix::Zero(total, total);
    w.topLeftCorner(primary_block, primary_block) = freedom->primary;
    w.bottomRightCorner(rest, rest) = freedom->remainder;
    u = w * u;
  }
  return u;
}

std::string describe(const char* kind, const EigenSplit& s) {
  std::ostringstream os;
  os << kind << "(n=" << s.n << ",m=" << s.m << ",r=" << s.r << ")";
  return os.str();
}

}  // namespace

HermitianOperator correlation_operator(const DensityOperator& rho_se) {
  const SpaceDims& dims = rho_se.bipartite();
  const Matrix rho_s = partial_trace_env(rho_se.matrix(), dims);
  const Matrix rho_e = partial_trace_system(rho_se.matrix(), dims);
  return HermitianOperator::unchecked(tensor(rho_s, rho_e) - rho_se.matrix(), dims);
}

// --------------------------- spectrum split ---------------------------

EigenSplit split_spectrum(const HermitianOperator& r_op, Index d_env,
                          const Tolerances& tol) {
  const Matrix& r = r_op.matrix();
  const Index total = r.rows();
  if (d_env < 1 || total % d_env != 0)
    throw std::invalid_argument("split_spectrum: d_env does not divide the dimension");
  const Index d_system = total / d_env;
  if (d_system < 2 || d_env < 2)
    throw std::invalid_argument("split_spectrum: both factors must have dimension >= 2");

  const Eigensystem es = hermitian_eig(r, tol);
  const double threshold = tol.zero_scale * r.cwiseAbs().maxCoeff();

  // es is descending, so the classes are contiguous: strict positives first,
  // then the zero class, then strict negatives.
  Index n_pos = 0, n_zero = 0;
  for (Index i = 0; i < total; ++i) {
    if (es.values(i) > threshold)
      ++n_pos;
    else if (es.values(i) >= -threshold)
      ++n_zero;
  }
  const Index n_neg = total - n_pos - n_zero;
  if (n_pos == 0 && n_neg == 0)
    throw domain_refusal("split_spectrum: correlation operator is zero");

  // r depends only on how many zero-class values join the plus class; scan
  // all counts, minimizing r and preferring the smaller n on ties.  Counts
  // that would empty either class (n = 0 or n = total) break the
  // construction and are skipped.
  Index best_z = -1, best_r = d_env;
  for (Index z = 0; z <= n_zero; ++z) {
    const Index n_cand = n_pos + z;
    if (n_cand == 0 || n_cand == total) continue;
    const Index cand = n_cand % d_env;
    if (cand < best_r) {
      best_r = cand;
      best_z = z;
    }
  }
  if (best_z < 0)
    throw domain_refusal("split_spectrum: spectrum admits no usable sign split");

  EigenSplit out;
  out.d_system = d_system;
  out.d_env = d_env;
  out.zeros_total = n_zero;
  out.zeros_to_plus = best_z;
  out.zero_threshold = threshold;
  out.n = n_pos + best_z;
  out.m = out.n / d_env;
  out.r = out.n % d_env;

  const Index n_plus = out.n;
  const Index n_minus = total - n_plus;
  out.plus_values.resize(n_plus);
  out.plus_vectors.resize(total, n_plus);
  out.minus_values.resize(n_minus);
  out.minus_vectors.resize(total, n_minus);

  // Plus class: positives and the first best_z zero-class values, all in the
  // descending order of es.  Minus class: strict negatives most negative
  // first, leftover zeros afterwards.
  for (Index i = 0; i < n_plus; ++i) {
    out.plus_values(i) = es.values(i);
    out.plus_vectors.col(i) = es.vectors.col(i);
  }
  Index col = 0;
  for (Index i = total - 1; i >= n_pos + n_zero; --i, ++col) {
    out.minus_values(col) = es.values(i);
    out.minus_vectors.col(col) = es.vectors.col(i);
  }
  for (Index i = n_pos + best_z; i < n_pos + n_zero; ++i, ++col) {
    out.minus_values(col) = es.values(i);
    out.minus_vectors.col(col) = es.vectors.col(i);
  }
  return out;
}

bool is_saturable(const EigenSplit& split) {
  if (split.r != 0) return false;
  if (split.m < 1 || split.m >= split.d_system)
    throw std::runtime_error("is_saturable: impossible split bookkeeping");
  return true;
}

// --------------------------- unitary constructions ---------------------------

UnitaryOperator witness_unitary(const EigenSplit& split, const BlockFreedom* freedom) {
  const Index total = split.d_system * split.d_env;
  if (split.m >= 1) {
    return UnitaryOperator::unchecked(assemble(split.plus_vectors, split.minus_vectors,
                                               freedom, split.m * split.d_env, total));
  }
  const Index m_minus = (total - split.n) / split.d_env;
  if (m_minus < 1)
    throw std::runtime_error("witness_unitary: both sign classes have m = 0");
  return UnitaryOperator::unchecked(assemble(split.minus_vectors, split.plus_vectors,
                                             freedom, m_minus * split.d_env, total));
}

UnitaryOperator optimal_unitary(const EigenSplit& split) {
  if (!is_saturable(split))
    throw std::invalid_argument("optimal_unitary: split is not saturable");
  return witness_unitary(split);
}

double witness_norm(const Matrix& r, const UnitaryOperator& u, const SpaceDims& dims,
                    const Tolerances& tol) {
  if (r.rows() != dims.total() || u.dim() != dims.total())
    throw std::invalid_argument("witness_norm: dimensions do not match");
  const Matrix evolved = u.matrix() * r * u.matrix().adjoint();
  return half_trace_norm(partial_trace_env(evolved, dims), tol);
}

// --------------------------- reports ---------------------------

namespace {

DetectionReport report_for(const Matrix& r, const SpaceDims& dims, const char* kind,
                           const Tolerances& tol) {
  DetectionReport rep;
  const HermitianOperator r_op = HermitianOperator::unchecked(r, dims);
  const EigenSplit split = split_spectrum(r_op, dims.d_env, tol);
  rep.saturable = is_saturable(split);
  const UnitaryOperator u = witness_unitary(split);
  rep.n = split.n;
  rep.m = split.m;
  rep.r = split.r;
  rep.bound = half_trace_norm(r, tol);
  rep.witness_value = witness_norm(r, u, dims, tol);
  rep.achieved = rep.witness_value;
  rep.detectable = rep.witness_value > tol.det;
  rep.unitary_id = describe(rep.saturable ? "optimal" : kind, split);
  rep.unitary = u.matrix();
  return rep;
}

}  // namespace

DetectionReport detect_initial_correlation(const DensityOperator& rho_se,
                                           const Tolerances& tol) {
  const SpaceDims& dims = rho_se.bipartite();
  const HermitianOperator r = correlation_operator(rho_se);
  if (r.matrix().cwiseAbs().maxCoeff() <= tol.zero_scale)
    throw domain_refusal("detect_initial_correlation: state is uncorrelated");
  return report_for(r.matrix(), dims, "witness", tol);
}

std::pair<UnitaryOperator, DetectionReport> saturate_pair(const DensityOperator& rho_se,
                                                          const DensityOperator& sigma_se,
                                                          const Tolerances& tol) {
  const SpaceDims& dims = rho_se.bipartite();
  if (!(sigma_se.bipartite() == dims))
    throw std::invalid_argument("saturate_pair: states live on different splits");
  const Matrix r = sigma_se.matrix() - rho_se.matrix();
  if (r.cwiseAbs().maxCoeff() <= tol.zero_scale)
    throw domain_refusal("saturate_pair: states are equal");
  DetectionReport rep = report_for(r, dims, "witness", tol);
  return {UnitaryOperator::unchecked(rep.unitary), std::move(rep)};
}

}  // namespace corrwitness::witness
