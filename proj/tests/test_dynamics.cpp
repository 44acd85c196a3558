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

#include <cmath>
#include <vector>

#include <doctest.h>

#include "corrwitness/algebra.hpp"
#include "corrwitness/dynamics.hpp"
#include "corrwitness/protocols.hpp"
#include "corrwitness/random.hpp"
#include "corrwitness/witness.hpp"

using namespace corrwitness;
namespace d = corrwitness::dynamics;
namespace w = corrwitness::witness;

namespace {

DensityOperator bell_state() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
  return DensityOperator::validated(std::move(m), SpaceDims{2, 2});
}

HermitianOperator random_hamiltonian(Index dim, const SpaceDims& dims, std::uint64_t seed) {
  Rng rng(seed);
  const Matrix g = rng.gaussian_matrix(dim, dim);
  return HermitianOperator::unchecked(g + g.adjoint(), dims);
}

}  // namespace

TEST_CASE("time grid endpoints, refinement stability, and validation") {
  const d::TimeGrid grid(10.0, 10);
  const std::vector<double> t10 = grid.times();
  REQUIRE(t10.size() == 11);
  CHECK(t10.front() == 0.0);
  CHECK(t10.back() == 10.0);

  // Halving the step keeps the coarse points bitwise identical.
  const std::vector<double> t20 = d::TimeGrid(10.0, 20).times();
  for (std::size_t i = 0; i < t10.size(); ++i) CHECK(t10[i] == t20[2 * i]);

  CHECK_THROWS_AS(d::TimeGrid(0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(d::TimeGrid(-1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(d::TimeGrid(1.0, 0), std::invalid_argument);
}

TEST_CASE("sweep starts at zero and matches a serial recomputation") {
  const DensityOperator rho = bell_state();
  const DensityOperator sigma =
      protocols::prepare_product_replacement(rho).sigma_se;
  const HermitianOperator h = random_hamiltonian(4, SpaceDims{2, 2}, 31);
  const d::TimeGrid grid(5.0, 25);
  const d::SweepResult res = d::sweep(h, rho, sigma, grid);

  REQUIRE(res.times.size() == 26);
  CHECK(res.witness_norms[0] < 1e-12);     // Tr_env(R) = 0 at t = 0
  CHECK(res.trace_distances[0] < 1e-12);   // equal system marginals at t = 0

  const Matrix r = w::correlation_operator(rho).matrix();
  double max_norm = 0.0;
  for (std::size_t i = 0; i < res.times.size(); ++i) {
    const UnitaryOperator u = expm_hermitian(h, res.times[i]);
    CHECK(res.witness_norms[i] ==
          doctest::Approx(w::witness_norm(r, u, SpaceDims{2, 2})).epsilon(1e-10));
    // For the replacement pair the reduced distance *is* the witness norm.
    CHECK(res.trace_distances[i] ==
          doctest::Approx(res.witness_norms[i]).epsilon(1e-10));
    max_norm = std::max(max_norm, res.witness_norms[i]);
  }
  CHECK(res.max_witness_norm == doctest::Approx(max_norm).epsilon(1e-12));

  if (res.first_detection_time.has_value()) {
    CHECK(*res.first_detection_time > 0.0);
    CHECK(res.detected_fraction > 0.0);
  }
}

TEST_CASE("sweep rejects mismatched pairs") {
  const DensityOperator rho = bell_state();
  const HermitianOperator h = random_hamiltonian(4, SpaceDims{2, 2}, 32);
  // A state with a different system marginal is outside the precondition.
  Matrix other = Matrix::Zero(4, 4);
  other(0, 0) = 1.0;
  const DensityOperator sigma = DensityOperator::unchecked(other, SpaceDims{2, 2});
  CHECK_THROWS_AS(d::sweep(h, rho, sigma, d::TimeGrid(1.0, 4)), std::invalid_argument);
}

TEST_CASE("truncated commutator series approaches the exact witness norm") {
  const DensityOperator rho =
      DensityOperator::unchecked(random_state(4, 4, 33).matrix(), SpaceDims{2, 2});
  const HermitianOperator r = w::correlation_operator(rho);
  const HermitianOperator h = random_hamiltonian(4, SpaceDims{2, 2}, 34);

  const UnitaryOperator u = expm_hermitian(h, 0.01);
  const double exact = w::witness_norm(r.matrix(), u, SpaceDims{2, 2});
  CHECK(std::abs(d::bch_norm(h, r, 0.01, 8) - exact) < 1e-10);
  // Successive orders improve monotonically here.
  CHECK(std::abs(d::bch_norm(h, r, 0.01, 4) - exact) <
        std::abs(d::bch_norm(h, r, 0.01, 2) - exact));

  // Order 0 keeps R itself, whose environment trace vanishes.
  CHECK(d::bch_norm(h, r, 0.01, 0) < 1e-12);

  // The leading term is linear in t.
  const double b1 = d::bch_norm(h, r, 0.01, 8);
  const double b2 = d::bch_norm(h, r, 0.005, 8);
  CHECK(b1 / b2 == doctest::Approx(2.0).epsilon(0.01));

  CHECK_THROWS_AS(d::bch_norm(h, r, 0.01, -1), std::invalid_argument);
}

TEST_CASE("zz chain is diagonal with the known spectrum") {
  const HermitianOperator h2 = d::build_zz_chain(2);
  Matrix expected2 = Matrix::Zero(4, 4);
  expected2(0, 0) = 1.0;
  expected2(1, 1) = -1.0;
  expected2(2, 2) = -1.0;
  expected2(3, 3) = 1.0;
  CHECK((h2.matrix() - expected2).cwiseAbs().maxCoeff() == 0.0);

  const HermitianOperator h3 = d::build_zz_chain(3);
  const std::vector<double> diag3 = {2, 0, -2, 0, 0, -2, 0, 2};
  for (Index k = 0; k < 8; ++k) {
    CHECK(h3.matrix()(k, k) == Complex(diag3[static_cast<std::size_t>(k)], 0));
  }
  CHECK(h3.matrix().cwiseAbs().sum() ==
        doctest::Approx(h3.matrix().diagonal().cwiseAbs().sum()));  // diagonal

  const HermitianOperator weighted = d::build_zz_chain(2, {0.5});
  CHECK(weighted.matrix()(0, 0) == Complex(0.5, 0));

  CHECK_THROWS_AS(d::build_zz_chain(1), std::invalid_argument);
  CHECK_THROWS_AS(d::build_zz_chain(13), std::invalid_argument);
  CHECK_THROWS_AS(d::build_zz_chain(3, {1.0}), std::invalid_argument);
}

TEST_CASE("undetectable family members are products across the split spin") {
  Rng rng(35);
  const DensityOperator rest = random_state(4, 4, rng);  // spins 1 and 3
  const DensityOperator family = d::build_undetectable_family(3, 2, rest, 0.4, 0.3);
  REQUIRE(family.space().has_value());
  CHECK(family.bipartite().d_system == 2);  // spins left of the split spin
  CHECK(family.bipartite().d_env == 4);

  // Tracing out everything except spin 2 recovers the planar Bloch state.
  const Matrix m = family.matrix();
  // Spin 2 is the middle qubit; trace out spin 1 (MSB) then spin 3 (LSB).
  const Matrix m23 = partial_trace_system(m, SpaceDims{2, 4});
  const Matrix m2 = partial_trace_env(m23, SpaceDims{2, 2});
  Matrix bloch = Matrix::Zero(2, 2);
  bloch(0, 0) = bloch(1, 1) = 0.5;
  bloch(0, 1) = Complex(0.2, -0.15);
  bloch(1, 0) = Complex(0.2, 0.15);
  CHECK((m2 - bloch).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(d::build_undetectable_family(3, 2, rest, 0.9, 0.9),
                  std::invalid_argument);
  CHECK_THROWS_AS(d::build_undetectable_family(3, 4, rest, 0.1, 0.1),
                  std::invalid_argument);
  const DensityOperator wrong = random_state(8, 8, rng);
  CHECK_THROWS_AS(d::build_undetectable_family(3, 2, wrong, 0.1, 0.1),
                  std::invalid_argument);
}

TEST_CASE("chain family is invisible to every witness along the evolution") {
  const d::TimeGrid grid(10.0, 50);
  const d::ChainSuiteReport rep =
      d::verify_undetectable(3, 2, 5, grid, 77, d::ChainControl::none);
  CHECK(rep.undetectable);
  CHECK(rep.max_witness_norm_rho <= 1e-9);
  CHECK(rep.max_witness_norm_sigma <= 1e-9);
  CHECK(rep.max_gain <= 1e-9);
  CHECK(rep.detected_trials == 0);
  CHECK(rep.schmidt_rank_at_probe > 1);  // the evolution does entangle
}

TEST_CASE("a z-tilted but still factorized spin stays invisible") {
  // Tilting the split spin's Bloch vector out of the plane keeps the
  // product structure, and the diagonal coupling still commutes away:
  // adding a local Z component alone cannot produce a detection.
  const d::TimeGrid grid(10.0, 50);
  const d::ChainSuiteReport rep =
      d::verify_undetectable(3, 2, 5, grid, 78, d::ChainControl::bloch_z);
  CHECK(rep.undetectable);
  CHECK(rep.max_witness_norm_rho <= 1e-9);
}

TEST_CASE("z-correlating the split spin with the rest is detected") {
  const d::TimeGrid grid(10.0, 50);
  const d::ChainSuiteReport rep =
      d::verify_undetectable(3, 2, 5, grid, 79, d::ChainControl::z_correlated);
  CHECK_FALSE(rep.undetectable);
  CHECK(rep.detected_trials >= 1);
  CHECK(rep.max_witness_norm_rho > 1e-6);
}

TEST_CASE("splitting at the last spin degenerates to an exact product") {
  const d::TimeGrid grid(10.0, 50);
  const d::ChainSuiteReport rep =
      d::verify_undetectable(3, 3, 5, grid, 80, d::ChainControl::none);
  CHECK(rep.undetectable);
  CHECK(rep.schmidt_rank_at_probe > 1);
  // Correlating the spin with the system side is detected even here.
  const d::ChainSuiteReport ctl =
      d::verify_undetectable(3, 3, 5, grid, 80, d::ChainControl::z_correlated);
  CHECK(ctl.detected_trials >= 1);
}

TEST_CASE("sweeping a family member against its replacement detects nothing") {
  Rng rng(36);
  const DensityOperator rest = random_state(4, 4, rng);
  const DensityOperator family = d::build_undetectable_family(3, 2, rest, 0.5, 0.2);
  const protocols::ScenarioPair pair = protocols::prepare_product_replacement(family);
  const d::SweepResult res =
      d::sweep(d::build_zz_chain(3), family, pair.sigma_se, d::TimeGrid(10.0, 100));
  CHECK(res.detected_fraction == 0.0);
  CHECK(res.max_witness_norm <= 1e-9);
  CHECK_FALSE(res.first_detection_time.has_value());
}
