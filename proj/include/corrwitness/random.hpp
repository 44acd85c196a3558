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

// random.hpp — Seeded sampling of states, unitaries and channels.  All draws
// are bitwise reproducible for a fixed seed: the generator is mt19937_64 and
// the normal variates come from an explicit Box-Muller transform (the
// distribution adapters in <random> are implementation-defined).

#pragma once

#include <cstdint>
#include <random>

#include "corrwitness/types.hpp"

namespace corrwitness {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  // Standard normal via Box-Muller.
  double gaussian();
  Complex complex_gaussian();  // independent N(0,1) real and imaginary parts
  // Matrix with independent complex-Gaussian entries.
  Matrix gaussian_matrix(Index rows, Index cols);

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Random density operator of the given dimension and rank: G G^dag / Tr(G G^dag)
// with G a dim x rank complex-Gaussian matrix.  rank = dim gives full rank,
// rank = 1 a Haar-random pure state.
DensityOperator random_state(Index dim, Index rank, std::uint64_t seed);
DensityOperator random_state(Index dim, Index rank, Rng& rng);

// Haar-distributed unitary: QR of a complex-Gaussian matrix with the R
// diagonal phases absorbed into Q.
UnitaryOperator random_unitary(Index dim, std::uint64_t seed);
UnitaryOperator random_unitary(Index dim, Rng& rng);

// Random channel with n_ops Kraus operators from a Haar-random isometry.
KrausMap random_kraus(Index dim, Index n_ops, std::uint64_t seed);
KrausMap random_kraus(Index dim, Index n_ops, Rng& rng);

}  // namespace corrwitness
