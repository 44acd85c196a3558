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

// dynamics.cpp — Time sweeps, commutator series, and the ZZ-chain suite.

#include "corrwitness/dynamics.hpp"

#include <cmath>

#include "corrwitness/random.hpp"
#include "corrwitness/threads.hpp"
#include "corrwitness/witness.hpp"

namespace corrwitness::dynamics {

// --------------------------- time grids ---------------------------

TimeGrid::TimeGrid(double t_max_, Index steps_) : t_max(t_max_), steps(steps_) {
  if (!(t_max > 0.0)) throw std::invalid_argument("TimeGrid: t_max must be positive");
  if (steps < 1) throw std::invalid_argument("TimeGrid: steps must be >= 1");
}

std::vector<double> TimeGrid::times() const {
  std::vector<double> out(static_cast<std::size_t>(steps) + 1);
  for (Index i = 0; i <= steps; ++i)
    out[static_cast<std::size_t>(i)] = (static_cast<double>(i) * t_max) / static_cast<double>(steps);
  return out;
}

// --------------------------- sweeps ---------------------------

namespace {

// Propagator factory from a precomputed eigensystem of h.
struct Propagator {
  Eigensystem es;
  Matrix at(double t) const {
    Vector phases(es.values.size());
    for (Index i = 0; i < es.values.size(); ++i)
      phases(i) = std::exp(Complex(0, -es.values(i) * t));
    return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
  }
};

}  // namespace

SweepResult sweep(const HermitianOperator& h, const DensityOperator& rho_se,
                  const DensityOperator& sigma_se, const TimeGrid& grid,
                  const Tolerances& tol) {
  const SpaceDims& dims = rho_se.bipartite();
  if (!(sigma_se.bipartite() == dims) || h.dim() != dims.total())
    throw std::invalid_argument("sweep: operands live on different spaces");
  const Matrix r = sigma_se.matrix() - rho_se.matrix();
  if (partial_trace_env(r, dims).cwiseAbs().maxCoeff() > tol.herm)
    throw std::invalid_argument("sweep: states have different system marginals");

  const Propagator prop{hermitian_eig(h.matrix(), tol)};
  SweepResult out;
  out.times = grid.times();
  const Index points = static_cast<Index>(out.times.size());
  out.witness_norms.assign(out.times.size(), 0.0);
  out.trace_distances.assign(out.times.size(), 0.0);

  parallel_for(points, [&](Index i) {
    const Matrix u = prop.at(out.times[static_cast<std::size_t>(i)]);
    const Matrix r_t = u * r * u.adjoint();
    out.witness_norms[static_cast<std::size_t>(i)] =
        half_trace_norm(partial_trace_env(r_t, dims), tol);
    const Matrix rho_t = u * rho_se.matrix() * u.adjoint();
    const Matrix sigma_t = u * sigma_se.matrix() * u.adjoint();
    out.trace_distances[static_cast<std::size_t>(i)] = trace_distance(
        partial_trace_env(rho_t, dims), partial_trace_env(sigma_t, dims), tol);
  });

  out.td_rates.assign(out.times.size(), 0.0);
  const double dt = grid.t_max / static_cast<double>(grid.steps);
  for (Index i = 0; i < points; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    if (i == 0)
      out.td_rates[ui] = (out.trace_distances[1] - out.trace_distances[0]) / dt;
    else if (i == points - 1)
      out.td_rates[ui] = (out.trace_distances[ui] - out.trace_distances[ui - 1]) / dt;
    else
      out.td_rates[ui] = (out.trace_distances[ui + 1] - out.trace_distances[ui - 1]) / (2 * dt);
  }

  Index detected = 0;
  for (Index i = 0; i < points; ++i) {
    const double norm = out.witness_norms[static_cast<std::size_t>(i)];
    out.max_witness_norm = std::max(out.max_witness_norm, norm);
    if (out.times[static_cast<std::size_t>(i)] > 0.0 && norm > tol.det) {
      ++detected;
      if (!out.first_detection_time)
        out.first_detection_time = out.times[static_cast<std::size_t>(i)];
    }
  }
  out.detected_fraction = static_cast<double>(detected) / static_cast<double>(grid.steps);
  return out;
}

double bch_norm(const HermitianOperator& h, const HermitianOperator& r, double t,
                int order, const Tolerances& tol) {
  if (h.dim() != r.dim())
    throw std::invalid_argument("bch_norm: operator dimensions differ");
  if (order < 0) throw std::invalid_argument("bch_norm: order must be >= 0");
  const SpaceDims& dims = r.bipartite();
  const Matrix ad = Complex(0, t) * h.matrix();  // iht
  Matrix term = r.matrix();
  Matrix sum = term;
  double factorial = 1.0;
  for (int k = 1; k <= order; ++k) {
    term = term * ad - ad * term;
    factorial *= k;
    sum += term / factorial;
  }
  return half_trace_norm(partial_trace_env(sum, dims), tol);
}

// --------------------------- spin chains ---------------------------

HermitianOperator build_zz_chain(int n_spins, const std::vector<double>& couplings) {
  if (n_spins < 2 || n_spins > 12)
    throw std::invalid_argument("build_zz_chain: need 2 <= n_spins <= 12");
  std::vector<double> c = couplings;
  if (c.empty()) c.assign(static_cast<std::size_t>(n_spins) - 1, 1.0);
  if (c.size() != static_cast<std::size_t>(n_spins) - 1)
    throw std::invalid_argument("build_zz_chain: need n_spins - 1 couplings");
  const Index dim = Index(1) << n_spins;
  Matrix h = Matrix::Zero(dim, dim);
  for (Index k = 0; k < dim; ++k) {
    double e = 0.0;
    for (int j = 0; j < n_spins - 1; ++j) {
      const int z1 = ((k >> (n_spins - 1 - j)) & 1) ? -1 : 1;
      const int z2 = ((k >> (n_spins - 2 - j)) & 1) ? -1 : 1;
      e += c[static_cast<std::size_t>(j)] * z1 * z2;
    }
    h(k, k) = e;
  }
  return HermitianOperator::unchecked(std::move(h));
}

namespace {

// rho_rest on all spins but split_spin (chain order), bloch state on
// split_spin, spliced back into chain order.
DensityOperator assemble_chain_state(int n_spins, int split_spin, const Matrix& rho_rest,
                                     const Matrix& rho_spin) {
  const Index dim = Index(1) << n_spins;
  Matrix full = tensor(rho_rest, rho_spin);
  std::vector<int> source_of(static_cast<std::size_t>(n_spins));
  for (int t = 0; t < n_spins; ++t) {
    if (t < split_spin - 1)
      source_of[static_cast<std::size_t>(t)] = t;
    else if (t == split_spin - 1)
      source_of[static_cast<std::size_t>(t)] = n_spins - 1;
    else
      source_of[static_cast<std::size_t>(t)] = t - 1;
  }
  Matrix chain = permute_qubits(full, source_of);
  (void)dim;
  const Index d_sys = Index(1) << (split_spin - 1);
  return DensityOperator::unchecked(std::move(chain),
                                    SpaceDims(d_sys, (Index(1) << n_spins) / d_sys));
}

Matrix bloch_state(double r_x, double r_y, double r_z) {
  Matrix rho(2, 2);
  rho << 0.5 * (1.0 + r_z), 0.5 * Complex(r_x, -r_y), 0.5 * Complex(r_x, r_y),
      0.5 * (1.0 - r_z);
  return rho;
}

}  // namespace

DensityOperator build_undetectable_family(int n_spins, int split_spin,
                                          const DensityOperator& rho_rest, double r_x,
                                          double r_y) {
  if (n_spins < 2 || n_spins > 12)
    throw std::invalid_argument("build_undetectable_family: need 2 <= n_spins <= 12");
  if (split_spin < 2 || split_spin > n_spins)
    throw std::invalid_argument("build_undetectable_family: need 2 <= split_spin <= n_spins");
  if (rho_rest.dim() != Index(1) << (n_spins - 1))
    throw std::invalid_argument("build_undetectable_family: rho_rest must act on the other spins");
  if (r_x * r_x + r_y * r_y > 1.0)
    throw std::invalid_argument("build_undetectable_family: Bloch vector leaves the disc");
  return assemble_chain_state(n_spins, split_spin, rho_rest.matrix(),
                              bloch_state(r_x, r_y, 0.0));
}

// --------------------------- undetectability suite ---------------------------

ChainSuiteReport verify_undetectable(int n_spins, int split_spin, int trials,
                                     const TimeGrid& grid, std::uint64_t seed,
                                     ChainControl control, const Tolerances& tol) {
  if (trials < 1) throw std::invalid_argument("verify_undetectable: trials must be >= 1");
  const HermitianOperator h = build_zz_chain(n_spins);
  const Propagator prop{hermitian_eig(h.matrix(), tol)};
  const Index d_rest = Index(1) << (n_spins - 1);
  const Index d_sys = Index(1) << (split_spin - 1);
  const SpaceDims dims(d_sys, (Index(1) << n_spins) / d_sys);

  ChainSuiteReport rep;
  rep.n_spins = n_spins;
  rep.split_spin = split_spin;
  rep.trials = trials;
  rep.schmidt_rank_at_probe =
      operator_schmidt_rank(prop.at(rep.probe_time), dims);

  Rng rng(seed);
  const std::vector<double> times = grid.times();

  for (int trial = 0; trial < trials; ++trial) {
    // In-plane Bloch vector; the controls tilt it out of plane or tie its
    // z-component to the state of the remaining spins.
    const double angle = 2.0 * 3.14159265358979323846 * rng.uniform();
    const double radius = 0.2 + 0.75 * rng.uniform();
    const double r_x = radius * std::cos(angle);
    const double r_y = radius * std::sin(angle);

    DensityOperator rho_se = DensityOperator::unchecked(Matrix(), dims);
    switch (control) {
      case ChainControl::none: {
        const DensityOperator rest = random_state(d_rest, d_rest, rng);
        rho_se = build_undetectable_family(n_spins, split_spin, rest, r_x, r_y);
        break;
      }
      case ChainControl::bloch_z: {
        const DensityOperator rest = random_state(d_rest, d_rest, rng);
        const double r_z = 0.3 + 0.5 * rng.uniform();
        const double scale = std::min(1.0, 0.99 / std::sqrt(r_x * r_x + r_y * r_y + r_z * r_z));
        rho_se = assemble_chain_state(n_spins, split_spin, rest.matrix(),
                                      bloch_state(scale * r_x, scale * r_y, scale * r_z));
        break;
      }
      case ChainControl::z_correlated: {
        const DensityOperator rest0 = random_state(d_rest, d_rest, rng);
        const DensityOperator rest1 = random_state(d_rest, d_rest, rng);
        const double r_z = 0.3 + 0.5 * rng.uniform();
        const double scale = std::min(1.0, 0.99 / std::sqrt(r_x * r_x + r_y * r_y + r_z * r_z));
        const Matrix up = 0.5 * assemble_chain_state(
                                    n_spins, split_spin, rest0.matrix(),
                                    bloch_state(scale * r_x, scale * r_y, scale * r_z))
                                    .matrix();
        const Matrix down = 0.5 * assemble_chain_state(
                                      n_spins, split_spin, rest1.matrix(),
                                      bloch_state(scale * r_x, scale * r_y, -scale * r_z))
                                      .matrix();
        rho_se = DensityOperator::unchecked(up + down, dims);
        break;
      }
    }

    const KrausMap local = random_kraus(d_sys, 2, rng);
    const DensityOperator sigma_se = apply_kraus_local(rho_se, local);
    const Matrix r = witness::correlation_operator(rho_se).matrix();
    const Matrix rbar = witness::correlation_operator(sigma_se).matrix();
    const double gain_base = trace_distance(partial_trace_env(rho_se.matrix(), dims),
                                            partial_trace_env(sigma_se.matrix(), dims), tol);

    double trial_max_r = 0.0;
    std::vector<double> norm_r(times.size()), norm_rbar(times.size()), gain(times.size());
    parallel_for(static_cast<Index>(times.size()), [&](Index i) {
      const auto ui = static_cast<std::size_t>(i);
      const Matrix u = prop.at(times[ui]);
      norm_r[ui] = half_trace_norm(partial_trace_env(u * r * u.adjoint(), dims), tol);
      norm_rbar[ui] = half_trace_norm(partial_trace_env(u * rbar * u.adjoint(), dims), tol);
      const Matrix rho_t = partial_trace_env(u * rho_se.matrix() * u.adjoint(), dims);
      const Matrix sigma_t = partial_trace_env(u * sigma_se.matrix() * u.adjoint(), dims);
      gain[ui] = trace_distance(rho_t, sigma_t, tol) - gain_base;
    });
    for (std::size_t i = 0; i < times.size(); ++i) {
      trial_max_r = std::max(trial_max_r, norm_r[i]);
      rep.max_witness_norm_rho = std::max(rep.max_witness_norm_rho, norm_r[i]);
      rep.max_witness_norm_sigma = std::max(rep.max_witness_norm_sigma, norm_rbar[i]);
      rep.max_gain = std::max(rep.max_gain, gain[i]);
    }
    if (trial_max_r > tol.det) ++rep.detected_trials;
  }

  rep.undetectable = rep.max_witness_norm_rho <= tol.det &&
                     rep.max_witness_norm_sigma <= tol.det && rep.max_gain <= tol.det;
  return rep;
}

}  // namespace corrwitness::dynamics
