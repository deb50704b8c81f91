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

// Wigner functions on rectangular phase-space grids and the witnesses
// built from them: negativity volume, quadrature squeezing, and a
// moment-matched Gaussianity test.
//
// Convention throughout: hbar = 1, x = (a + a^dag)/sqrt(2),
// p = (a - a^dag)/(i sqrt(2)), integral of W over dx dp equals 1. The vacuum
// has W(0,0) = 1/pi and quadrature variances 1/2.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "retro/detectors.hpp"
#include "retro/fock.hpp"
#include "retro/retrodiction.hpp"

namespace retro {

inline constexpr std::string_view kWignerConvention =
    "hbar=1; x=(a+a^dag)/sqrt(2); p=(a-a^dag)/(i*sqrt(2)); integral W dx dp = 1";

struct PhaseSpaceTolerances {
  double neg_tol = 1e-6;
  double sq_tol = 1e-6;
  double gauss_tol = 1e-3;
};

/// Uniform grid, endpoints included: x_i = x_min + i (x_max - x_min)/(nx - 1).
class PhaseSpaceGrid {
 public:
  PhaseSpaceGrid(double x_min, double x_max, double p_min, double p_max, std::size_t nx,
                 std::size_t np);
  /// [-r, r]^2 with n points per axis.
  static PhaseSpaceGrid square(double r, std::size_t n);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double p_min() const { return p_min_; }
  double p_max() const { return p_max_; }
  std::size_t nx() const { return nx_; }
  std::size_t np() const { return np_; }
  double x(std::size_t i) const { return x_min_ + static_cast<double>(i) * dx(); }
  double p(std::size_t j) const { return p_min_ + static_cast<double>(j) * dp(); }
  double dx() const { return (x_max_ - x_min_) / static_cast<double>(nx_ - 1); }
  double dp() const { return (p_max_ - p_min_) / static_cast<double>(np_ - 1); }
  std::string_view convention() const { return kWignerConvention; }

 private:
  double x_min_, x_max_, p_min_, p_max_;
  std::size_t nx_, np_;
};

struct WignerGrid {
  PhaseSpaceGrid grid;
  Eigen::MatrixXd values;  // values(i, j) = W(x_i, p_j)

  double min() const { return values.minCoeff(); }
  /// Riemann sum of W dx dp.
  double integral() const;
};

enum class Gaussianity { Gaussian, NonGaussian, Undetermined };

std::string_view to_string(Gaussianity g);

struct QuadratureMoments {
  Eigen::Vector2d mean;  // (<x>, <p>)
  Eigen::Matrix2d cov;   // symmetrized second central moments
};

struct NonClassicalityReport {
  std::string outcome_label;
  double projectivity = 0.0;
  double min_wigner = 0.0;
  double negativity_volume = 0.0;
  double min_quadrature_variance = 0.0;
  bool squeezing_witness = false;
  bool is_nonclassical = false;
  Gaussianity gaussianity = Gaussianity::Undetermined;
  /// Projective, non-negative Wigner function, yet found NonGaussian. Pure
  /// states with non-negative Wigner functions are Gaussian, so this marks a
  /// numerical problem (grid too coarse, truncation too small).
  bool hudson_inconsistent = false;
  Warnings warnings;
};

/// W at a single point, (1/pi) Tr{rho D(2 alpha) P} with alpha = (x+ip)/sqrt 2,
/// expanded over the analytic number-basis matrix elements of D.
double wigner_at(const DensityMatrix& rho, double x, double p);

/// Warns when the grid radius squared exceeds 2 * dim.
WignerGrid wigner(const DensityMatrix& rho, const PhaseSpaceGrid& grid,
                  Warnings* warnings = nullptr);

/// integral |W| - integral W, by Riemann sum. Warns if |W| >= 1e-6 anywhere on
/// the grid boundary.
double negativity_volume(const WignerGrid& w, Warnings* warnings = nullptr);

/// Exact for states supported on the truncated levels: computed from
/// <a>, <a^2> and <a^dag a>.
QuadratureMoments covariance_matrix(const DensityMatrix& rho);

/// True iff the smallest covariance eigenvalue is below 1/2 - sq_tol.
bool squeezing_witness(const DensityMatrix& rho, double sq_tol = 1e-6);

struct GaussianReference {
  DensityMatrix state;  // renormalized on the first dim levels
  double tail;          // weight lost beyond the truncation
};

/// Displaced squeezed thermal state with the given first and second
/// moments, truncated to `dim` levels. Built in a padded auxiliary space
/// and projected.
GaussianReference gaussian_reference(const QuadratureMoments& moments, FockDim dim);

/// Compares rho with its moment-matched Gaussian through
/// Tr{rho g} / max(Tr{rho^2}, Tr{g^2}). Undetermined when the reference loses
/// more than 1e-6 of its weight to truncation.
Gaussianity gaussianity_check(const DensityMatrix& rho, double gauss_tol = 1e-3);

/// Applies the witnesses to the retrodicted state of `pi`. Throws NullOutcome.
NonClassicalityReport nonclassicality_of_measurement(const PovmElement& pi,
                                                     const PhaseSpaceGrid& grid,
                                                     const PhaseSpaceTolerances& tol = {},
                                                     const Thresholds& thresholds = {});

}  // namespace retro
