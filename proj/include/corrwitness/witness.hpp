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

// witness.hpp — Detection of initial system-environment correlations.
//
// The central object is the correlation operator R = rho_S (x) rho_E - rho_SE:
// a traceless Hermitian operator whose environment trace vanishes.  Splitting
// its spectrum into a non-negative and a negative class fixes the bookkeeping
// n = m*d_env + r, from which a global unitary is assembled that maps the
// eigenvectors onto computational product states.  The witness unitary makes
// the evolved reduced system state reveal the correlation, i.e.
// Tr_env(U R U^dag) != 0 whenever R != 0; the optimal unitary additionally
// saturates the trace-distance bound D = (1/2)Tr|R|, which is possible
// exactly when r can be brought to zero by reassigning zero eigenvalues.

#pragma once

#include <string>
#include <utility>

#include "corrwitness/algebra.hpp"
#include "corrwitness/types.hpp"

namespace corrwitness::witness {

// R = rho_S (x) rho_E - rho_SE on the split attached to rho_se.
HermitianOperator correlation_operator(const DensityOperator& rho_se);

// --------------------------- spectrum split ---------------------------

struct EigenSplit {
  // Non-negative class, descending (strictly positive values first, then any
  // zero-class values assigned here).
  Eigen::VectorXd plus_values;
  Matrix plus_vectors;
  // Negative class, most negative first, zero-class leftovers last.
  Eigen::VectorXd minus_values;
  Matrix minus_vectors;

  Index d_system = 0, d_env = 0;
  Index n = 0, m = 0, r = 0;  // n = plus count = m*d_env + r, 0 <= r < d_env
  Index zeros_total = 0, zeros_to_plus = 0;
  double zero_threshold = 0.0;
};

// Eigendecomposes R and assigns zero-class eigenvalues (|lambda| below
// zero_scale*max|R_ij|) to the sign classes so that r is as small as
// possible, preferring the smaller n on ties.  Only the number of reassigned
// zeros matters for (n, m, r), so scanning the counts 0..#zeros is an exact
// minimization.  Throws domain_refusal when every eigenvalue is in the zero
// class (R vanishes) and std::invalid_argument when d_env does not divide
// the dimension.
EigenSplit split_spectrum(const HermitianOperator& r_op, Index d_env,
                          const Tolerances& tol = default_tolerances());

// True when the split reached r == 0, i.e. the saturating construction
// exists (n = m*d_env with 0 < m < d_system).
bool is_saturable(const EigenSplit& split);

// --------------------------- unitary constructions ---------------------------

// Optional residual freedom of the construction: extra unitaries applied
// within the primary image block (dimension m*d_env of the primary class)
// and within its complement.  Any such rotation preserves the witness
// guarantee; identity is used when absent.
struct BlockFreedom {
  Matrix primary;
  Matrix remainder;
};

// The witness unitary: eigenvectors of the primary sign class fill the first
// m*d_env computational product slots (system rows 0..m-1), the leftover r
// primary vectors and the whole secondary class fill the remaining rows.
// The primary class is the plus class when it has m >= 1, otherwise the
// minus class (the construction mirrors); both classes having m = 0 is
// impossible for a nonzero traceless R and raises std::runtime_error.
UnitaryOperator witness_unitary(const EigenSplit& split,
                                const BlockFreedom* freedom = nullptr);

// The saturating unitary; requires is_saturable(split).  With r == 0 the
// plus and minus images occupy disjoint system rows, so the evolved reduced
// states attain the full bound (1/2)Tr|R|.
UnitaryOperator optimal_unitary(const EigenSplit& split);

// (1/2) Tr | Tr_env( U R U^dag ) | — the detection strength of u against r.
double witness_norm(const Matrix& r, const UnitaryOperator& u, const SpaceDims& dims,
                    const Tolerances& tol = default_tolerances());

// --------------------------- reports ---------------------------

struct DetectionReport {
  double bound = 0.0;         // right-hand side: trace distance to compare against
  double achieved = 0.0;      // left-hand side realized by the constructed unitary
  double witness_value = 0.0; // (1/2)Tr|Tr_env(U R U^dag)|
  bool detectable = false;    // witness_value > tol.det
  bool saturable = false;
  Index n = 0, m = 0, r = 0;
  std::string unitary_id;
  Matrix unitary;
};

// Full pipeline for one state: build R, split, construct the witness, and
// measure it.  Refuses (domain_refusal) when the state is uncorrelated.
DetectionReport detect_initial_correlation(const DensityOperator& rho_se,
                                           const Tolerances& tol = default_tolerances());

// Discrimination form for an arbitrary state pair: the spectrum split of
// sigma_se - rho_se decides between the saturating and the witness
// construction; achieved equals the bound exactly on saturable splits.
std::pair<UnitaryOperator, DetectionReport> saturate_pair(
    const DensityOperator& rho_se, const DensityOperator& sigma_se,
    const Tolerances& tol = default_tolerances());

}  // namespace corrwitness::witness
