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

// dynamics.hpp — Witness behaviour under Hamiltonian evolution: time sweeps
// of the detection norm, its commutator-series expansion for short times,
// and the nearest-neighbour ZZ chain with its family of states that stay
// undetectable at every time even though the propagator entangles the cut.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "corrwitness/algebra.hpp"
#include "corrwitness/types.hpp"

namespace corrwitness::dynamics {

// --------------------------- time grids ---------------------------

// Uniform grid 0 = t_0 < ... < t_steps = t_max (steps intervals).  Grid
// values are bitwise stable under refinement: doubling `steps` reproduces
// the shared points exactly.
struct TimeGrid {
  double t_max = 0.0;
  Index steps = 0;

  TimeGrid(double t_max, Index steps);
  std::vector<double> times() const;
};

// --------------------------- sweeps ---------------------------

struct SweepResult {
  std::vector<double> times;
  std::vector<double> witness_norms;    // (1/2)Tr|Tr_env(U(t) R U(t)^dag)|
  std::vector<double> trace_distances;  // D(rho_S(t), sigma_S(t))
  std::vector<double> td_rates;         // centered finite-difference diagnostic
  double detected_fraction = 0.0;       // fraction of t > 0 with norm > tol.det
  double max_witness_norm = 0.0;
  std::optional<double> first_detection_time;
};

// Evolves the pair under U(t) = exp(-i h t) over the grid with
// R = sigma_se - rho_se.  Requires Tr_env(R) = 0 (equal system marginals),
// so that the witness norm vanishes at t = 0.  Grid points are independent
// and evaluated slot-parallel.
SweepResult sweep(const HermitianOperator& h, const DensityOperator& rho_se,
                  const DensityOperator& sigma_se, const TimeGrid& grid,
                  const Tolerances& tol = default_tolerances());

// Truncated commutator series for the witness norm at small t:
// U R U^dag ~ sum_{k<=order} ad^k(R)/k! with ad(X) = [X, iht].  Returns
// (1/2)Tr|Tr_env(series)|.
double bch_norm(const HermitianOperator& h, const HermitianOperator& r, double t,
                int order, const Tolerances& tol = default_tolerances());

// --------------------------- spin chains ---------------------------

// H = sum_j c_j Z_j Z_{j+1} on n_spins qubits; spin 1 is the most
// significant qubit.  couplings may be empty (all 1) or n_spins-1 long.
HermitianOperator build_zz_chain(int n_spins, const std::vector<double>& couplings = {});

// The chain state rho_rest (x) rho_split with spin `split_spin` prepared in
// the xy-plane Bloch state (I + r_x X + r_y Y)/2 and every other spin
// belonging to rho_rest (chain order, spin split_spin spliced back in).
// System = spins 1..split_spin-1, environment = spins split_spin..n_spins;
// the returned state carries that split.  Requires r_x^2 + r_y^2 <= 1.
DensityOperator build_undetectable_family(int n_spins, int split_spin,
                                          const DensityOperator& rho_rest, double r_x,
                                          double r_y);

// --------------------------- undetectability suite ---------------------------

enum class ChainControl {
  none,          // the in-plane family itself
  bloch_z,       // out-of-plane Bloch vector, product form kept
  z_correlated,  // spin split_spin z-component classically tied to the rest
};

struct ChainSuiteReport {
  int n_spins = 0, split_spin = 0, trials = 0;
  double max_witness_norm_rho = 0.0;    // over trials and grid, for R
  double max_witness_norm_sigma = 0.0;  // same for Rbar of the local-map partner
  double max_gain = 0.0;                // max_t D(t) - D(0)
  int detected_trials = 0;              // trials whose R-witness ever fires
  int schmidt_rank_at_probe = 0;        // operator Schmidt rank of U(probe_time)
  double probe_time = 0.7;
  bool undetectable = false;            // all three maxima <= tol.det
};

// Draws `trials` family members (state of the rest, in-plane Bloch vector,
// and a random local system channel giving the comparison state), sweeps
// both against their product replacements under the ZZ chain, and tracks the
// witness norms and the trace-distance gain.  The control variants replace
// the family draw to probe its boundary.
ChainSuiteReport verify_undetectable(int n_spins, int split_spin, int trials,
                                     const TimeGrid& grid, std::uint64_t seed,
                                     ChainControl control = ChainControl::none,
                                     const Tolerances& tol = default_tolerances());

}  // namespace corrwitness::dynamics
