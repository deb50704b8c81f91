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

#include "retro/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace retro {

namespace {

constexpr double kPi = std::numbers::pi;

// exp(g) for anti-Hermitian g, through the Hermitian h = i g.
Matrix expm_antihermitian(const Matrix& g) {
  Matrix h = cplx(0.0, 1.0) * g;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
  Vector phases = (es.eigenvalues().cast<cplx>() * cplx(0.0, -1.0)).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// Sum over all (m, n) of rho_mn (-1)^m <n|D(beta)|m>, using
// <m+k|D(beta)|m> = sqrt(m!/(m+k)!) beta^k e^{-|beta|^2/2} L_m^(k)(|beta|^2).
double displaced_parity(const Matrix& rho, double x, double p) {
  const Eigen::Index d = rho.rows();
  const double bx = std::sqrt(2.0) * x;
  const double bp = std::sqrt(2.0) * p;
  const double b2 = bx * bx + bp * bp;
  const double babs = std::sqrt(b2);
  const double theta = std::atan2(bp, bx);
  double total = 0.0;
  for (Eigen::Index k = 0; k < d; ++k) {
    if (k > 0 && babs == 0.0) break;
    const double kd = static_cast<double>(k);
    // f(0,k) = |beta|^k e^{-|beta|^2/2} / sqrt(k!)
    double f = std::exp((k > 0 ? kd * std::log(babs) : 0.0) - 0.5 * b2 -
                        0.5 * std::lgamma(kd + 1.0));
    const cplx phase = std::polar(1.0, kd * theta);
    double l_prev = 0.0;
    double l = 1.0;
    double sum_k = 0.0;
    for (Eigen::Index m = 0; m + k < d; ++m) {
      const double md = static_cast<double>(m);
      if (m > 0) {
        f *= std::sqrt(md / (md + kd));
        double l_next = (m == 1) ? 1.0 + kd - b2
                                 : ((2.0 * md - 1.0 + kd - b2) * l - (md - 1.0 + kd) * l_prev) / md;
        l_prev = l;
        l = l_next;
      }
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      const double elem = (k == 0) ? rho(m, m).real() : 2.0 * (rho(m, m + k) * phase).real();
      sum_k += sign * f * l * elem;
    }
    total += sum_k;
  }
  return total;
}

}  // namespace

PhaseSpaceGrid::PhaseSpaceGrid(double x_min, double x_max, double p_min, double p_max,
                               std::size_t nx, std::size_t np)
    : x_min_(x_min), x_max_(x_max), p_min_(p_min), p_max_(p_max), nx_(nx), np_(np) {
  if (!(x_max > x_min) || !(p_max > p_min)) {
    throw std::invalid_argument("PhaseSpaceGrid: empty axis range");
  }
  if (nx < 2 || np < 2) throw std::invalid_argument("PhaseSpaceGrid: need >= 2 points per axis");
}

PhaseSpaceGrid PhaseSpaceGrid::square(double r, std::size_t n) {
  return PhaseSpaceGrid(-r, r, -r, r, n, n);
}

double WignerGrid::integral() const { return values.sum() * grid.dx() * grid.dp(); }

std::string_view to_string(Gaussianity g) {
  switch (g) {
    case Gaussianity::Gaussian:
      return "Gaussian";
    case Gaussianity::NonGaussian:
      return "NonGaussian";
    case Gaussianity::Undetermined:
      return "Undetermined";
  }
  return "?";
}

double wigner_at(const DensityMatrix& rho, double x, double p) {
  return displaced_parity(rho.matrix(), x, p) / kPi;
}

WignerGrid wigner(const DensityMatrix& rho, const PhaseSpaceGrid& grid, Warnings* warnings) {
  if (warnings) {
    const double r = std::max({std::abs(grid.x_min()), std::abs(grid.x_max()),
                               std::abs(grid.p_min()), std::abs(grid.p_max())});
    const double limit = 2.0 * static_cast<double>(rho.dim().value());
    if (r * r > limit) {
      std::ostringstream os;
      os << "wigner: grid radius^2 " << r * r << " exceeds 2*dim = " << limit
         << "; the outer grid resolves only truncation tails";
      warnings->push_back(os.str());
    }
  }
  Eigen::MatrixXd values(grid.nx(), grid.np());
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    for (std::size_t j = 0; j < grid.np(); ++j) {
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          wigner_at(rho, grid.x(i), grid.p(j));
    }
  }
  if (!values.allFinite()) throw std::runtime_error("wigner: non-finite values");
  if (values.minCoeff() < -1.0 / kPi - 1e-6) {
    std::ostringstream os;
    os << "wigner: value " << values.minCoeff() << " below the -1/pi bound";
    throw std::runtime_error(os.str());
  }
  return {grid, std::move(values)};
}

double negativity_volume(const WignerGrid& w, Warnings* warnings) {
  if (warnings) {
    const auto& v = w.values;
    const Eigen::Index r = v.rows() - 1;
    const Eigen::Index c = v.cols() - 1;
    double edge = std::max({v.row(0).cwiseAbs().maxCoeff(), v.row(r).cwiseAbs().maxCoeff(),
                            v.col(0).cwiseAbs().maxCoeff(), v.col(c).cwiseAbs().maxCoeff()});
    if (edge >= 1e-6) {
      std::ostringstream os;
      os << "negativity_volume: |W| reaches " << edge << " on the grid boundary";
      warnings->push_back(os.str());
    }
  }
  const double cell = w.grid.dx() * w.grid.dp();
  return std::max(0.0, (w.values.cwiseAbs().sum() - w.values.sum()) * cell);
}

QuadratureMoments covariance_matrix(const DensityMatrix& rho) {
  const Matrix& m = rho.matrix();
  const Eigen::Index d = m.rows();
  cplx a1 = 0.0;  // <a>   = sum_n sqrt(n) rho_{n, n-1}
  cplx a2 = 0.0;  // <a^2> = sum_n sqrt(n (n-1)) rho_{n, n-2}
  double num = 0.0;
  for (Eigen::Index n = 0; n < d; ++n) {
    const double nd = static_cast<double>(n);
    num += nd * m(n, n).real();
    if (n >= 1) a1 += std::sqrt(nd) * m(n, n - 1);
    if (n >= 2) a2 += std::sqrt(nd * (nd - 1.0)) * m(n, n - 2);
  }
  QuadratureMoments out;
  out.mean << std::sqrt(2.0) * a1.real(), std::sqrt(2.0) * a1.imag();
  const double xx = a2.real() + num + 0.5;
  const double pp = -a2.real() + num + 0.5;
  const double xp = a2.imag();
  out.cov << xx - out.mean(0) * out.mean(0), xp - out.mean(0) * out.mean(1),
      xp - out.mean(0) * out.mean(1), pp - out.mean(1) * out.mean(1);
  return out;
}

bool squeezing_witness(const DensityMatrix& rho, double sq_tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(covariance_matrix(rho).cov);
  return es.eigenvalues()(0) < 0.5 - sq_tol;
}

GaussianReference gaussian_reference(const QuadratureMoments& moments, FockDim dim) {
  const Eigen::Index d = dim.index();
  const Eigen::Index aux = 2 * d + 40;

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(moments.cov);
  const double v_small = std::max(es.eigenvalues()(0), 1e-300);
  const double v_large = es.eigenvalues()(1);
  const double nu = std::sqrt(std::max(v_small * v_large, 0.25));
  const double nbar = std::max(nu - 0.5, 0.0);
  const double r = 0.25 * std::log(v_large / v_small);
  const Eigen::Vector2d axis = es.eigenvectors().col(0);
  const double theta = std::atan2(axis(1), axis(0));
  const cplx alpha(moments.mean(0) / std::sqrt(2.0), moments.mean(1) / std::sqrt(2.0));

  Matrix thermal = Matrix::Zero(aux, aux);
  for (Eigen::Index k = 0; k < aux; ++k) {
    thermal(k, k) = std::pow(nbar, static_cast<double>(k)) /
                    std::pow(nbar + 1.0, static_cast<double>(k) + 1.0);
  }

  const Matrix a = annihilation(FockDim(static_cast<std::size_t>(aux)));
  const Matrix ad = a.adjoint();
  // S(r) = exp(r (a^2 - a^dag^2)/2) squeezes x; exp(i theta n) turns the
  // squeezed axis to angle theta; D(alpha) shifts the means.
  const Matrix squeeze = expm_antihermitian(0.5 * r * (a * a - ad * ad));
  Matrix rotate = Matrix::Zero(aux, aux);
  for (Eigen::Index k = 0; k < aux; ++k) rotate(k, k) = std::polar(1.0, theta * static_cast<double>(k));
  const Matrix displace = expm_antihermitian(alpha * ad - std::conj(alpha) * a);

  const Matrix w = displace * rotate * squeeze;
  const Matrix full = w * thermal * w.adjoint();
  Matrix block = full.topLeftCorner(d, d);
  block = 0.5 * (block + block.adjoint());
  const double kept = block.trace().real();
  return {DensityMatrix(block / kept), std::max(0.0, 1.0 - kept)};
}

Gaussianity gaussianity_check(const DensityMatrix& rho, double gauss_tol) {
  GaussianReference ref = gaussian_reference(covariance_matrix(rho), rho.dim());
  if (ref.tail > 1e-6) return Gaussianity::Undetermined;
  const double overlap = (rho.matrix().transpose().cwiseProduct(ref.state.matrix())).sum().real();
  const double proxy = overlap / std::max(rho.purity(), ref.state.purity());
  return proxy >= 1.0 - gauss_tol ? Gaussianity::Gaussian : Gaussianity::NonGaussian;
}

NonClassicalityReport nonclassicality_of_measurement(const PovmElement& pi,
                                                     const PhaseSpaceGrid& grid,
                                                     const PhaseSpaceTolerances& tol,
                                                     const Thresholds& thresholds) {
  RetrodictedState r = retrodicted_state(pi);
  NonClassicalityReport rep;
  rep.outcome_label = pi.label;
  rep.projectivity = projectivity(r);
  WignerGrid w = wigner(r.state, grid, &rep.warnings);
  rep.min_wigner = w.min();
  rep.negativity_volume = negativity_volume(w, &rep.warnings);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(covariance_matrix(r.state).cov);
  rep.min_quadrature_variance = es.eigenvalues()(0);
  rep.squeezing_witness = rep.min_quadrature_variance < 0.5 - tol.sq_tol;
  rep.is_nonclassical = rep.negativity_volume > tol.neg_tol || rep.squeezing_witness;
  rep.gaussianity = gaussianity_check(r.state, tol.gauss_tol);
  if (rep.gaussianity == Gaussianity::Undetermined) {
    rep.warnings.push_back("gaussianity: moment-matched reference exceeds the truncation");
  }
  rep.hudson_inconsistent = rep.projectivity >= thresholds.pi_min &&
                            rep.min_wigner >= -tol.neg_tol &&
                            rep.gaussianity == Gaussianity::NonGaussian;
  return rep;
}

}  // namespace retro
