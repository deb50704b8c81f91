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

// POVM containers, canonical optical detector models and POVM validation.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "retro/fock.hpp"

namespace retro {

inline constexpr double kCompletenessTol = 1e-9;
/// Elements with trace below this are null outcomes: kept, flagged.
inline constexpr double kNullTrace = 1e-14;

struct PovmElement {
  std::string label;
  HermitianOperator op;

  FockDim dim() const { return op.dim(); }
  double trace() const { return op.trace(); }
  bool is_null() const { return trace() < kNullTrace; }
};

struct Povm {
  FockDim dim;
  std::vector<PovmElement> elements;
  /// Top levels excluded from the completeness check.
  std::size_t guard_levels = 0;

  /// Returns nullptr if no element carries `label`.
  const PovmElement* find(const std::string& label) const;
  /// Throws std::out_of_range if absent.
  const PovmElement& at(const std::string& label) const;
};

struct ElementCheck {
  std::string label;
  double hermiticity_defect = 0.0;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double trace = 0.0;
  bool hermitian = true;
  bool positive = true;
  bool bounded = true;  // max eigenvalue <= 1 + psd_tol
  bool null_outcome = false;
};

struct ValidationReport {
  std::vector<ElementCheck> elements;
  /// max over guarded levels i,j of |<i|(sum Pi - I)|j>|
  double completeness_residual = 0.0;
  std::size_t checked_levels = 0;
  bool pass = false;

  std::string summary() const;
};

/// ceil(dim/5): default for POVMs loaded from experimental files.
std::size_t default_guard_levels(FockDim dim);

/// Perfect photon-number-resolving counter: Pi_n = |n><n|.
Povm ideal_pnr(FockDim dim);

/// Binomial-loss counter with efficiency eta:
/// Pi_n = sum_{m>=n} C(m,n) eta^n (1-eta)^(m-n) |m><m|.
Povm lossy_pnr(double eta, FockDim dim);

/// Click detector. Pi_off = (1-nu) sum_n (1-eta)^n |n><n|, Pi_on = I - Pi_off.
/// The dark-count model scales the no-click element by (1-nu).
Povm on_off_apd(double eta, double nu, FockDim dim);

/// zeta |psi><psi|. Pure retrodicted state with detection efficiency zeta.
PovmElement scaled_projector(const StateVector& psi, double zeta, std::string label = "proj");

/// Appends "rest" = I - sum(elements). Eigenvalues of the rest within
/// [-psd_tol, 0) are clipped to zero; larger violations throw
/// std::invalid_argument.
Povm complete_with_rest(std::vector<PovmElement> elements);

ValidationReport validate_povm(const Povm& p);

/// Same checks on raw labelled matrices; used for file input where elements
/// may not even be Hermitian.
ValidationReport validate_matrices(const std::vector<std::string>& labels,
                                   const std::vector<Matrix>& matrices,
                                   std::size_t guard_levels);

}  // namespace retro
