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

// types.hpp — Core value types: space dimensions, tolerances, and validated
// wrappers for density, Hermitian, unitary and Kraus operators.
//
// Validation happens at construction (the `validated` factories); hot paths
// that re-derive already-checked objects can use the `unchecked` escape
// hatch.  All matrices are dense, row-major-indexed in the computational
// basis with the system factor leftmost: |j_S>|l_E>  <->  row j*d_env + l.

#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace corrwitness {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;
using Complex = std::complex<double>;

// Thrown when an input is structurally fine but the requested operation is
// meaningless for it (e.g. asking for a correlation witness of an exactly
// uncorrelated state).  The CLI maps this to its "domain refusal" exit code.
struct domain_refusal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --------------------------- dimensions ---------------------------

struct SpaceDims {
  Index d_system = 0;
  Index d_env = 0;

  SpaceDims() = default;
  SpaceDims(Index ds, Index de) : d_system(ds), d_env(de) {
    if (ds < 1 || de < 1)
      throw std::invalid_argument("SpaceDims: factor dimensions must be >= 1");
  }
  Index total() const { return d_system * d_env; }
  bool operator==(const SpaceDims& o) const {
    return d_system == o.d_system && d_env == o.d_env;
  }
};

// --------------------------- tolerances ---------------------------

// Absolute tolerances unless noted.  eig_scale and zero_scale are relative:
// the eigendecomposition residual bound is eig_scale*dim, and eigenvalues of
// a correlation operator R count as zero below zero_scale*max|R_ij|.
struct Tolerances {
  double herm = 1e-9;        // Hermiticity, max-norm of M - M^dag
  double trace = 1e-9;       // |Tr(rho) - 1|
  double psd = 1e-9;         // admissible negative eigenvalue magnitude
  double unit = 1e-9;        // unitarity / Kraus completeness, max-norm
  double det = 1e-9;         // detection threshold on witness norms
  double eig_scale = 1e-10;  // eigendecomposition residual per dimension
  double zero_scale = 1e-10; // zero classification relative to max|R|
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

// --------------------------- operator wrappers ---------------------------

class DensityOperator {
 public:
  // Throws std::invalid_argument naming the violated invariant (Hermiticity,
  // unit trace, positivity) or a dimension mismatch with `space`.
  static DensityOperator validated(Matrix m, std::optional<SpaceDims> space = {},
                                   const Tolerances& tol = default_tolerances());
  static DensityOperator unchecked(Matrix m, std::optional<SpaceDims> space = {});

  const Matrix& matrix() const { return mat_; }
  Index dim() const { return mat_.rows(); }
  const std::optional<SpaceDims>& space() const { return space_; }
  // The bipartite split; throws if none was attached.
  const SpaceDims& bipartite() const;

 private:
  DensityOperator(Matrix m, std::optional<SpaceDims> space)
      : mat_(std::move(m)), space_(space) {}
  Matrix mat_;
  std::optional<SpaceDims> space_;
};

class HermitianOperator {
 public:
  static HermitianOperator validated(Matrix m, std::optional<SpaceDims> space = {},
                                     const Tolerances& tol = default_tolerances());
  static HermitianOperator unchecked(Matrix m, std::optional<SpaceDims> space = {});

  const Matrix& matrix() const { return mat_; }
  Index dim() const { return mat_.rows(); }
  const std::optional<SpaceDims>& space() const { return space_; }
  const SpaceDims& bipartite() const;

 private:
  HermitianOperator(Matrix m, std::optional<SpaceDims> space)
      : mat_(std::move(m)), space_(space) {}
  Matrix mat_;
  std::optional<SpaceDims> space_;
};

class UnitaryOperator {
 public:
  static UnitaryOperator validated(Matrix m,
                                   const Tolerances& tol = default_tolerances());
  static UnitaryOperator unchecked(Matrix m);

  const Matrix& matrix() const { return mat_; }
  Index dim() const { return mat_.rows(); }

 private:
  explicit UnitaryOperator(Matrix m) : mat_(std::move(m)) {}
  Matrix mat_;
};

// A completely positive trace-preserving map given by Kraus operators
// (d_out x d_in each); completeness sum_i E_i^dag E_i = I_{d_in} is checked.
class KrausMap {
 public:
  static KrausMap validated(std::vector<Matrix> ops,
                            const Tolerances& tol = default_tolerances());
  static KrausMap unchecked(std::vector<Matrix> ops);

  const std::vector<Matrix>& ops() const { return ops_; }
  Index d_in() const { return ops_.front().cols(); }
  Index d_out() const { return ops_.front().rows(); }

 private:
  explicit KrausMap(std::vector<Matrix> ops) : ops_(std::move(ops)) {}
  std::vector<Matrix> ops_;
};

}  // namespace corrwitness
