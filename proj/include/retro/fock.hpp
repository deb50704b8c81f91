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

// Truncated Fock-space primitives: dense operators and states on levels
// 0..d-1, tensor products with A-major composite indexing, partial trace
// over the second factor, and Hermitian eigendecomposition.

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace retro {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Human-readable notes about numerically weak inputs. Operations that can
/// degrade silently (truncation, grid extent) append here when given one.
using Warnings = std::vector<std::string>;

inline constexpr double kHermTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kNormTol = 1e-9;

/// Truncation dimension of a single-mode (or composite) Fock space.
class FockDim {
 public:
  explicit FockDim(std::size_t d);

  std::size_t value() const { return d_; }
  Eigen::Index index() const { return static_cast<Eigen::Index>(d_); }

  friend bool operator==(FockDim, FockDim) = default;

 private:
  std::size_t d_;
};

class HermitianOperator {
 public:
  /// Throws std::invalid_argument unless `m` is square, finite, at least
  /// 2x2, and Hermitian to within kHermTol in max-norm.
  explicit HermitianOperator(Matrix m);

  static HermitianOperator identity(FockDim dim);
  static HermitianOperator zero(FockDim dim);
  /// (m + m^dagger)/2, for inputs carrying representation noise.
  static HermitianOperator symmetrized(const Matrix& m);

  FockDim dim() const { return FockDim(static_cast<std::size_t>(m_.rows())); }
  const Matrix& matrix() const { return m_; }
  cplx operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  double trace() const { return m_.trace().real(); }

  HermitianOperator operator*(double s) const { return HermitianOperator(m_ * s); }
  HermitianOperator operator+(const HermitianOperator& o) const;
  HermitianOperator operator-(const HermitianOperator& o) const;

 private:
  Matrix m_;
};

class DensityMatrix;

class StateVector {
 public:
  /// Throws std::invalid_argument unless the 2-norm is 1 within kNormTol.
  explicit StateVector(Vector amplitudes);
  /// Rescales to unit norm; throws on a zero or non-finite vector.
  static StateVector normalized(Vector amplitudes);

  FockDim dim() const { return FockDim(static_cast<std::size_t>(a_.size())); }
  const Vector& amplitudes() const { return a_; }
  cplx operator[](Eigen::Index i) const { return a_(i); }

  /// |psi><psi|
  HermitianOperator projector() const;

 private:
  Vector a_;
};

/// Unit-trace, positive semidefinite Hermitian operator.
class DensityMatrix {
 public:
  /// Validates Hermiticity (kHermTol), min eigenvalue >= -kPsdTol and
  /// trace 1 within kNormTol. Throws std::invalid_argument otherwise.
  explicit DensityMatrix(Matrix m);

  static DensityMatrix pure(const StateVector& psi);
  /// op / Tr{op}; op must be positive semidefinite with positive trace.
  static DensityMatrix normalized(const HermitianOperator& op);
  static DensityMatrix maximally_mixed(FockDim dim);

  FockDim dim() const { return FockDim(static_cast<std::size_t>(m_.rows())); }
  const Matrix& matrix() const { return m_; }
  cplx operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  HermitianOperator as_operator() const { return HermitianOperator(m_); }
  /// Tr{rho^2}
  double purity() const;

 private:
  Matrix m_;
};

struct EigenDecomposition {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;          // columns
};

StateVector fock_state(std::size_t n, FockDim dim);

/// Coherent state |alpha>, renormalized after truncation. Appends a warning
/// when |alpha|^2 > dim/4.
StateVector coherent_state(cplx alpha, FockDim dim, Warnings* warnings = nullptr);

/// S(r)|0> for real r: weight (-tanh r)^k sqrt((2k)!)/(2^k k!) on |2k>,
/// renormalized after truncation. Quadrature variance of x is e^{-2r}/2.
StateVector squeezed_vacuum(double r, FockDim dim);

// Composite index (i_A, i_B) -> i_A * dim_B + i_B.
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
StateVector tensor(const StateVector& a, const StateVector& b);

/// (Tr_B M)_{ij} = sum_k M_{(i,k),(j,k)}. Accepts non-Hermitian input, as
/// arises for rho_AB (1 x Pi) before the trace.
Matrix partial_trace_b(const Matrix& m, FockDim dim_a, FockDim dim_b);
HermitianOperator partial_trace_b(const HermitianOperator& op_ab, FockDim dim_a,
                                  FockDim dim_b);

/// Elementwise complex conjugation in the number basis.
HermitianOperator conjugate_in_fock(const HermitianOperator& op);
DensityMatrix conjugate_in_fock(const DensityMatrix& rho);

/// Symmetrizes, then diagonalizes. Eigenvalues ascending.
EigenDecomposition eig_hermitian(const HermitianOperator& op);

cplx inner(const StateVector& a, const StateVector& b);

/// Truncated ladder operator a|n> = sqrt(n)|n-1>.
Matrix annihilation(FockDim dim);
HermitianOperator number_operator(FockDim dim);

/// Tr{rho A} (real part; A Hermitian).
double expectation(const DensityMatrix& rho, const HermitianOperator& a);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// (1/2) ||rho - sigma||_1
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace retro
