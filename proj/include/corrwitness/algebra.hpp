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

// algebra.hpp — Dense bipartite operator algebra: tensor products, partial
// traces, trace distance, Hermitian eigensystems, unitary/Kraus application,
// and exp(-iHt) propagators.  Conventions match types.hpp: system-major
// computational basis, |j_S>|l_E> at row j*d_env + l.

#pragma once

#include <vector>

#include "corrwitness/types.hpp"

namespace corrwitness {

// --------------------------- small constants ---------------------------

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

// Computational basis column |k> in dimension d.
Vector basis_ket(Index k, Index d);

// --------------------------- tensor structure ---------------------------

// Kronecker product with the left factor most significant (system-major).
Matrix tensor(const Matrix& a, const Matrix& b);

// Trace over the environment (right) factor: result is d_system x d_system.
Matrix partial_trace_env(const Matrix& m, const SpaceDims& dims);

// Trace over the system (left) factor: result is d_env x d_env.
Matrix partial_trace_system(const Matrix& m, const SpaceDims& dims);

// Permutes tensor factors of a 2^n x 2^n operator over n qubits.  source_of[t]
// names the source qubit position providing target position t; position 0 is
// the most significant qubit.
Matrix permute_qubits(const Matrix& m, const std::vector<int>& source_of);

// Operator Schmidt rank across the system|environment cut: the number of
// singular values of the realigned matrix above rel_tol times the largest.
// A product operator A (x) B has rank 1.
int operator_schmidt_rank(const Matrix& m, const SpaceDims& dims,
                          double rel_tol = 1e-9);

// --------------------------- spectra and norms ---------------------------

struct Eigensystem {
  Eigen::VectorXd values;  // descending
  Matrix vectors;          // orthonormal columns, vectors.col(i) <-> values(i)
};

// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
// Throws std::invalid_argument if m is not Hermitian within tol.herm and
// std::runtime_error if the solver fails to converge.
Eigensystem hermitian_eig(const Matrix& m, const Tolerances& tol = default_tolerances());

// (1/2) sum_i |lambda_i(m)| for Hermitian m — one half of the trace norm.
double half_trace_norm(const Matrix& m, const Tolerances& tol = default_tolerances());

// D(a, b) = (1/2) Tr|a - b|.  Symmetric, in [0, 1] for density operators.
double trace_distance(const Matrix& a, const Matrix& b,
                      const Tolerances& tol = default_tolerances());

// --------------------------- channels and evolution ---------------------------

// U rho U^dag, preserving any attached system/environment split.
DensityOperator apply_unitary(const DensityOperator& rho, const UnitaryOperator& u);

// sum_i E_i rho E_i^dag; the result is validated as a density operator.
DensityOperator apply_kraus(const DensityOperator& rho, const KrausMap& k);

// Applies a map on the system factor only: sum_i (E_i (x) I_env) rho (...)^dag.
DensityOperator apply_kraus_local(const DensityOperator& rho_se, const KrausMap& k);

// exp(-i h t) through the spectral decomposition of Hermitian h.
UnitaryOperator expm_hermitian(const HermitianOperator& h, double t);

// Composition (second after first) of two Kraus maps: products E2_j E1_i.
KrausMap kraus_compose(const KrausMap& second, const KrausMap& first);

}  // namespace corrwitness
