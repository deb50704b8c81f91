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

#include "retro/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace retro {

namespace {

void require_square_finite(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix is not square");
  }
  if (m.rows() < 2) {
    throw std::invalid_argument(std::string(what) + ": dimension must be >= 2");
  }
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
}

double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// Square root of a PSD matrix. Eigenvalues at round-off level are zeroed,
// since their square roots would otherwise inject ~1e-8 noise.
Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
  const double floor =
      64.0 * std::numeric_limits<double>::epsilon() * std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1.0);
  Eigen::VectorXd s = es.eigenvalues().unaryExpr([floor](double v) { return v > floor ? std::sqrt(v) : 0.0; });
  return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

FockDim::FockDim(std::size_t d) : d_(d) {
  if (d < 2) {
    throw std::invalid_argument("FockDim: dimension must be >= 2, got " + std::to_string(d));
  }
}

HermitianOperator::HermitianOperator(Matrix m) : m_(std::move(m)) {
  require_square_finite(m_, "HermitianOperator");
  double defect = hermiticity_defect(m_);
  if (defect > kHermTol) {
    std::ostringstream os;
    os << "HermitianOperator: ||M - M^dagger||_max = " << defect << " exceeds " << kHermTol;
    throw std::invalid_argument(os.str());
  }
}

HermitianOperator HermitianOperator::identity(FockDim dim) {
  return HermitianOperator(Matrix::Identity(dim.index(), dim.index()));
}

HermitianOperator HermitianOperator::zero(FockDim dim) {
  return HermitianOperator(Matrix::Zero(dim.index(), dim.index()));
}

HermitianOperator HermitianOperator::symmetrized(const Matrix& m) {
  require_square_finite(m, "HermitianOperator");
  return HermitianOperator(0.5 * (m + m.adjoint()));
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& o) const {
  if (o.m_.rows() != m_.rows()) throw std::invalid_argument("HermitianOperator: dimension mismatch");
  return HermitianOperator(m_ + o.m_);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& o) const {
  if (o.m_.rows() != m_.rows()) throw std::invalid_argument("HermitianOperator: dimension mismatch");
  return HermitianOperator(m_ - o.m_);
}

StateVector::StateVector(Vector amplitudes) : a_(std::move(amplitudes)) {
  if (a_.size() < 2) throw std::invalid_argument("StateVector: dimension must be >= 2");
  if (!a_.allFinite()) throw std::invalid_argument("StateVector: non-finite amplitudes");
  double norm = a_.norm();
  if (std::abs(norm - 1.0) > kNormTol) {
    std::ostringstream os;
    os << "StateVector: norm " << norm << " differs from 1 by more than " << kNormTol;
    throw std::invalid_argument(os.str());
  }
}

StateVector StateVector::normalized(Vector amplitudes) {
  double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("StateVector: cannot normalize a zero or non-finite vector");
  }
  return StateVector(amplitudes / norm);
}

HermitianOperator StateVector::projector() const {
  Matrix p = a_ * a_.adjoint();
  return HermitianOperator::symmetrized(p);
}

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
  require_square_finite(m_, "DensityMatrix");
  double defect = hermiticity_defect(m_);
  if (defect > kHermTol) {
    std::ostringstream os;
    os << "DensityMatrix: not Hermitian (defect " << defect << ")";
    throw std::invalid_argument(os.str());
  }
  double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > kNormTol) {
    std::ostringstream os;
    os << "DensityMatrix: trace " << tr << " differs from 1";
    throw std::invalid_argument(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m_ + m_.adjoint()), Eigen::EigenvaluesOnly);
  double min_eig = es.eigenvalues()(0);
  if (min_eig < -kPsdTol) {
    std::ostringstream os;
    os << "DensityMatrix: negative eigenvalue " << min_eig;
    throw std::invalid_argument(os.str());
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix(psi.projector().matrix());
}

DensityMatrix DensityMatrix::normalized(const HermitianOperator& op) {
  double tr = op.trace();
  if (!(tr > 0.0)) throw std::invalid_argument("DensityMatrix: operator has non-positive trace");
  return DensityMatrix(op.matrix() / tr);
}

DensityMatrix DensityMatrix::maximally_mixed(FockDim dim) {
  return DensityMatrix(Matrix::Identity(dim.index(), dim.index()) /
                       static_cast<double>(dim.value()));
}

double DensityMatrix::purity() const {
  // Tr{rho^2} = sum_ij |rho_ij|^2 for Hermitian rho.
  return m_.cwiseAbs2().sum();
}

StateVector fock_state(std::size_t n, FockDim dim) {
  if (n >= dim.value()) {
    throw std::out_of_range("fock_state: level " + std::to_string(n) + " outside dimension " +
                            std::to_string(dim.value()));
  }
  Vector v = Vector::Zero(dim.index());
  v(static_cast<Eigen::Index>(n)) = 1.0;
  return StateVector(std::move(v));
}

StateVector coherent_state(cplx alpha, FockDim dim, Warnings* warnings) {
  if (warnings && std::norm(alpha) > static_cast<double>(dim.value()) / 4.0) {
    std::ostringstream os;
    os << "coherent_state: |alpha|^2 = " << std::norm(alpha) << " exceeds dim/4 = "
       << static_cast<double>(dim.value()) / 4.0 << "; truncation is weak";
    warnings->push_back(os.str());
  }
  Vector v(dim.index());
  v(0) = 1.0;
  for (Eigen::Index n = 1; n < dim.index(); ++n) {
    v(n) = v(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  }
  return StateVector::normalized(std::move(v));
}

StateVector squeezed_vacuum(double r, FockDim dim) {
  if (!std::isfinite(r)) throw std::invalid_argument("squeezed_vacuum: r must be finite");
  Vector v = Vector::Zero(dim.index());
  const double t = -std::tanh(r);
  double c = 1.0;
  v(0) = c;
  for (Eigen::Index k = 1; 2 * k < dim.index(); ++k) {
    const double two_k = 2.0 * static_cast<double>(k);
    c *= t * std::sqrt(two_k * (two_k - 1.0)) / two_k;
    v(2 * k) = c;
  }
  return StateVector::normalized(std::move(v));
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
  Matrix k = Eigen::kroneckerProduct(a.matrix(), b.matrix());
  return HermitianOperator(std::move(k));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  Matrix k = Eigen::kroneckerProduct(a.matrix(), b.matrix());
  return DensityMatrix(std::move(k));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  Vector k = Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes());
  return StateVector(std::move(k));
}

Matrix partial_trace_b(const Matrix& m, FockDim dim_a, FockDim dim_b) {
  const Eigen::Index da = dim_a.index();
  const Eigen::Index db = dim_b.index();
  if (m.rows() != da * db || m.cols() != da * db) {
    std::ostringstream os;
    os << "partial_trace_b: operator of size " << m.rows() << "x" << m.cols()
       << " does not factor as " << da << "*" << db;
    throw std::invalid_argument(os.str());
  }
  Matrix out = Matrix::Zero(da, da);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      out(i, j) = m.block(i * db, j * db, db, db).trace();
    }
  }
  return out;
}

HermitianOperator partial_trace_b(const HermitianOperator& op_ab, FockDim dim_a, FockDim dim_b) {
  return HermitianOperator(partial_trace_b(op_ab.matrix(), dim_a, dim_b));
}

HermitianOperator conjugate_in_fock(const HermitianOperator& op) {
  return HermitianOperator(op.matrix().conjugate());
}

DensityMatrix conjugate_in_fock(const DensityMatrix& rho) {
  return DensityMatrix(rho.matrix().conjugate());
}

EigenDecomposition eig_hermitian(const HermitianOperator& op) {
  const Matrix& m = op.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eig_hermitian: eigensolver did not converge");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

cplx inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
  return a.amplitudes().dot(b.amplitudes());
}

Matrix annihilation(FockDim dim) {
  Matrix a = Matrix::Zero(dim.index(), dim.index());
  for (Eigen::Index n = 1; n < dim.index(); ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

HermitianOperator number_operator(FockDim dim) {
  Matrix n = Matrix::Zero(dim.index(), dim.index());
  for (Eigen::Index k = 0; k < dim.index(); ++k) n(k, k) = static_cast<double>(k);
  return HermitianOperator(std::move(n));
}

double expectation(const DensityMatrix& rho, const HermitianOperator& a) {
  if (rho.dim() != a.dim()) throw std::invalid_argument("expectation: dimension mismatch");
  // Tr{rho A} = sum_ij rho_ij A_ji
  return (rho.matrix().transpose().cwiseProduct(a.matrix())).sum().real();
}

double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("uhlmann_fidelity: dimension mismatch");
  // Tr sqrt(sqrt(rho) sigma sqrt(rho)) is the nuclear norm of sqrt(rho) sqrt(sigma).
  Matrix prod = psd_sqrt(rho.matrix()) * psd_sqrt(sigma.matrix());
  Eigen::JacobiSVD<Matrix> svd(prod);
  const double root_trace = svd.singularValues().sum();
  return root_trace * root_trace;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
  Matrix diff = rho.matrix() - sigma.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace retro
