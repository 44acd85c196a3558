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

// protocols.hpp — Experimental discrimination scenarios built around the
// correlation witness: reference-state preparation by local channels,
// the trace-distance bounds the evolved reduced states must satisfy, and
// detection of correlations internal to a composite environment.

#pragma once

#include <utility>

#include "corrwitness/types.hpp"
#include "corrwitness/witness.hpp"

namespace corrwitness::protocols {

// How the reference state sigma_SE was produced; bounds below are only
// meaningful for the families they were derived for.
enum class Provenance { local_map, product_replacement, env_factorized, arbitrary };

struct ScenarioPair {
  DensityOperator rho_se;
  DensityOperator sigma_se;
  Provenance provenance = Provenance::arbitrary;
  // Set when the system eigenbasis used in a preparation was ambiguous
  // (degenerate rho_S); the verdict can depend on the basis choice.
  bool eigenbasis_degenerate = false;
};

// Channel sending every input to `target`, as Kraus operators
// sqrt(p_k)|v_k><j| over the spectral decomposition of the target.
KrausMap constant_channel(const Matrix& target, Index d_in,
                          const Tolerances& tol = default_tolerances());

// sigma_SE = (F_S (x) id)(rho_SE) with F_S the replace-with-rho_S channel
// (prepare |0>, then turn |0> into rho_S).  The result is checked against
// the directly assembled rho_S (x) rho_E within 1e-10.
ScenarioPair prepare_product_replacement(const DensityOperator& rho_se,
                                         const Tolerances& tol = default_tolerances());

// sigma_SE from the local dephasing map in the eigenbasis of rho_S.  Inside
// degenerate eigenspaces the basis is the computational-lexicographic
// Gram-Schmidt choice, and the pair is flagged eigenbasis_degenerate.
ScenarioPair dephase_in_eigenbasis(const DensityOperator& rho_se,
                                   const Tolerances& tol = default_tolerances());

// D(rho_SE, rho_S x rho_E) + D(sigma_SE, sigma_S x sigma_E) + D(rho_E, sigma_E):
// the three-term bound the reduced trace-distance gain can never exceed.
double bound_rhs_full(const ScenarioPair& pair,
                      const Tolerances& tol = default_tolerances());

// The two witness terms {(1/2)Tr|Tr_env(U R U^dag)|, same for Rbar} that
// bound the gain when both states share the environment marginal
// (local_map-style pairs); throws std::invalid_argument otherwise.
std::pair<double, double> bound_rhs_R(const ScenarioPair& pair, const UnitaryOperator& u,
                                      const Tolerances& tol = default_tolerances());

// --------------------------- composite environments ---------------------------

// System S uncorrelated with a two-part environment B (x) C; correlations
// *inside* the environment are the detection target.  Index order is
// S-major, then B, then C: row (s*d_b + b)*d_c + c.
struct TripartiteState {
  DensityOperator rho_sbc;
  Index d_s = 0, d_b = 0, d_c = 0;

  static TripartiteState validated(Matrix m, Index d_s, Index d_b, Index d_c,
                                   const Tolerances& tol = default_tolerances());
};

// Evolves rho_S (x) rho_BC against rho_S (x) rho_B (x) rho_C under u and
// reports the reduced-state distance with bound D(rho_BC, rho_B x rho_C).
// Requires the S factor of tri to be in product with BC.  The overload
// without a unitary constructs the witness for R = sigma - rho itself.
witness::DetectionReport detect_env_correlation(const TripartiteState& tri,
                                                const UnitaryOperator& u,
                                                const Tolerances& tol = default_tolerances());
witness::DetectionReport detect_env_correlation(const TripartiteState& tri,
                                                const Tolerances& tol = default_tolerances());

}  // namespace corrwitness::protocols
