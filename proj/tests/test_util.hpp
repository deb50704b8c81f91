// Copyright 2026 The retrodict Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Random generators for property tests. Fixed seeds keep runs reproducible.

#pragma once

#include <random>

#include "retro/detectors.hpp"
#include "retro/fock.hpp"

namespace retro::testing {

using Rng = std::mt19937_64;

inline Matrix random_complex(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = cplx(n(rng), n(rng));
  }
  return m;
}

inline HermitianOperator random_hermitian(std::size_t d, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(d);
  Matrix g = random_complex(n, n, rng);
  return HermitianOperator(0.5 * (g + g.adjoint()));
}

inline StateVector random_state(std::size_t d, Rng& rng) {
  return StateVector::normalized(random_complex(static_cast<Eigen::Index>(d), 1, rng).col(0));
}

/// Random density matrix of random rank.
inline DensityMatrix random_density(std::size_t d, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(d);
  std::uniform_int_distribution<Eigen::Index> rank(1, n);
  Matrix g = random_complex(n, rank(rng), rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

/// Random PSD element with spectrum scaled into (0, 1].
inline PovmElement random_element(std::size_t d, Rng& rng, std::string label = "x") {
  const auto n = static_cast<Eigen::Index>(d);
  std::uniform_int_distribution<Eigen::Index> rank(1, n);
  std::uniform_real_distribution<double> top(0.05, 1.0);
  Matrix g = random_complex(n, rank(rng), rng);
  Matrix p = g * g.adjoint();
  p = 0.5 * (p + p.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(p, Eigen::EigenvaluesOnly);
  p *= top(rng) / es.eigenvalues()(n - 1);
  return {std::move(label), HermitianOperator(0.5 * (p + p.adjoint()))};
}

inline std::size_t random_dim(std::size_t lo, std::size_t hi, Rng& rng) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace retro::testing
