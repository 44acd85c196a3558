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

// tomography.hpp — Process tomography of the reduced dynamics and the
// linearity criterion that decides whether one reduced map can describe
// them.  The experimenter owns a single (possibly correlated) joint state
// rho_SE^(1) and local channels that re-prepare its system part into an
// informationally complete family; whether the tomographic linear
// extrapolation matches reality is controlled by the residual
// Y = rho_SE - sum_i a_i rho_SE^(i) and the norm (1/2)Tr|Tr_env(U Y U^dag)|.

#pragma once

#include <vector>

#include "corrwitness/algebra.hpp"
#include "corrwitness/types.hpp"

namespace corrwitness::tomography {

// --------------------------- operator basis ---------------------------

// d^2 pure states spanning the Hermitian operators on C^d: the computational
// projectors |i><i|, then for each i < j the superposition projectors
// |i>+|j> and |i>+i|j> (normalized).  Order is deterministic.
struct OperatorBasis {
  Index d = 0;
  std::vector<Matrix> states;
  Eigen::MatrixXd gram;      // Tr(states[i] * states[j])
  double condition = 0.0;    // spectral condition number of gram
};

OperatorBasis build_basis(Index d_system);

// Coefficients a with rho_s = sum_i a_i states[i].  Exact basis elements
// return exact unit vectors; otherwise the Gram system is solved and the
// reconstruction residual and sum_i a_i = 1 are checked.  Throws
// std::invalid_argument on ill-conditioned bases (condition > 1e6) or
// inconsistent input.
Eigen::VectorXd expand_in_basis(const Matrix& rho_s, const OperatorBasis& basis,
                                const Tolerances& tol = default_tolerances());

// --------------------------- tomography record ---------------------------

struct TomographyRecord {
  OperatorBasis basis;
  SpaceDims dims;
  Matrix u;                         // probe unitary on the joint space
  std::vector<Matrix> prepared_se;  // (F^(i) (x) id)(rho_SE^(1))
  std::vector<Matrix> outputs;      // Tr_env(U prepared_i U^dag)
  std::vector<double> y_norms;      // residual norms of the prepared family (0 by construction)
};

// Runs the preparation/evolution protocol.  basis_maps[i] must realize the
// i-th basis state from rho_S^(1) within 1e-10 (checked).  The overload
// without maps uses the replace-with-basis-state channels.
TomographyRecord run_tomography(const DensityOperator& rho_se1, const UnitaryOperator& u,
                                const std::vector<KrausMap>& basis_maps,
                                const Tolerances& tol = default_tolerances());
TomographyRecord run_tomography(const DensityOperator& rho_se1, const UnitaryOperator& u,
                                const Tolerances& tol = default_tolerances());

// --------------------------- prediction and linearity ---------------------------

struct LinearPrediction {
  Matrix matrix;                 // sum_i a_i outputs[i]
  double min_eigenvalue = 0.0;
  double trace_error = 0.0;
  bool positive = false;         // flagged, never clamped
};

// Tomographic linear extrapolation for a query system state.  Feeding a
// basis state reproduces the recorded output bitwise.
LinearPrediction predict_linear(const TomographyRecord& record, const Matrix& rho_s_query,
                                const Tolerances& tol = default_tolerances());

// Residual Y = rho_se_query - sum_i a_i prepared_i (a from the query's
// system marginal) and its evolved witness norm (1/2)Tr|Tr_env(U Y U^dag)|.
double correlation_residual_norm(const TomographyRecord& record, const Matrix& rho_se_query,
                                 const Tolerances& tol = default_tolerances());

struct LinearityVerdict {
  bool linear = false;           // all residual norms <= tol.det
  std::vector<double> y_norms;
  double max_y_norm = 0.0;
};

// The reduced dynamics admit one linear map on the query family iff every
// residual norm vanishes.
LinearityVerdict linearity_criterion(const TomographyRecord& record,
                                     const std::vector<DensityOperator>& queries,
                                     const Tolerances& tol = default_tolerances());

}  // namespace corrwitness::tomography
