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

// Conditional state preparation on mode A of a two-mode squeezed vacuum
// |psi> ~ sum_n lambda^n |n, n> when mode B gives outcome Pi.
//
// The general route traces out B of |psi><psi| (1 x Pi). For the TMSV the
// result is also available in closed form, rho_A ~ L Pi^* L with
// L = diag(lambda^n), which tends to the conjugated retrodicted state
// Pi^* / Tr{Pi} as lambda -> 1.

#pragma once

#include <string>
#include <vector>

#include "retro/detectors.hpp"
#include "retro/errors.hpp"
#include "retro/fock.hpp"

namespace retro {

/// lambda^(2 dim) above this triggers a truncation warning.
inline constexpr double kTailTol = 1e-8;
/// lambda^(2 dim) above this is refused by scans.
inline constexpr double kTailRefuseTol = 1e-6;

class TmsvParams {
 public:
  /// Throws std::invalid_argument unless 0 <= lambda < 1. Warns when the
  /// truncated weight lambda^(2 dim) exceeds kTailTol.
  TmsvParams(double lambda, FockDim dim, Warnings* warnings = nullptr);

  double lambda() const { return lambda_; }
  FockDim dim() const { return dim_; }
  /// Weight of the untruncated TMSV beyond level dim-1, lambda^(2 dim).
  double tail() const;

 private:
  double lambda_;
  FockDim dim_;
};

struct HeraldResult {
  DensityMatrix conditional_state;  // mode A
  double success_probability;
  std::string outcome_label;
};

struct ScanPoint {
  double lambda;
  double fidelity;  // Uhlmann fidelity to conj(rho_retr)
  double success_probability;
};

struct LimitScan {
  std::vector<ScanPoint> points;  // ascending lambda
  bool non_decreasing;            // within 1e-12
  bool strictly_increasing;
};

/// Amplitudes sqrt(1 - lambda^2) lambda^n on |n, n>, renormalized over the
/// kept levels. Composite index n * dim + n.
StateVector tmsv(const TmsvParams& params);

/// rho_A = Tr_B{|psi><psi| (1 x Pi)} / Pr, Pr = Tr{|psi><psi| (1 x Pi)}, for a
/// pure joint state of size dim_A * dim_B with dim_B = dim(Pi). Throws
/// HeraldImpossible when Pr <= kTraceFloor.
HeraldResult heralded_state(const StateVector& psi_ab, const PovmElement& pi_b);

/// Same, for a mixed joint state, through explicit tensor and partial trace.
HeraldResult heralded_state(const DensityMatrix& rho_ab, const PovmElement& pi_b);

/// rho_A = normalize(L conj(Pi) L), Pr = c^2 Tr{L conj(Pi) L} where c^2 is the
/// truncated TMSV normalization (1 - lambda^2)/(1 - lambda^(2 dim)).
HeraldResult heralded_closed_form(const TmsvParams& params, const PovmElement& pi_b);

/// Fidelity of the heralded state to the conjugated retrodicted state for
/// each lambda. Throws TruncationError when lambda^(2 dim) > kTailRefuseTol,
/// std::invalid_argument when dim differs from the element's dimension.
LimitScan retrodictive_limit_scan(const PovmElement& pi_b, std::vector<double> lambdas,
                                  FockDim dim);

}  // namespace retro
