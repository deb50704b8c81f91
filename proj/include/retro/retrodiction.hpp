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

// Retrodicted states and the per-outcome estimators built on them.
//
// For an outcome with POVM element Pi the retrodicted state is Pi / Tr{Pi}.
// Its purity is the projectivity pi, Tr{Pi^2}/Tr{Pi} the ideality zeta
// (zeta = pi * Tr{Pi}), the overlap with a target state the fidelity F, and
// the Born probability of the target the detectivity kappa. These satisfy
// kappa * pi = zeta * F.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "retro/detectors.hpp"
#include "retro/errors.hpp"
#include "retro/fock.hpp"

namespace retro {

/// Elements with Tr{Pi} at or below this have no retrodicted state.
inline constexpr double kTraceFloor = 1e-12;

struct RetrodictedState {
  DensityMatrix state;
  std::string outcome_label;
  double trace_weight;  // Tr{Pi}
};

struct ProbeEntry {
  double prior;
  DensityMatrix state;
  std::string label;
};

/// Prior-weighted candidate preparations {Pr(m), rho_m}.
class ProbeEnsemble {
 public:
  /// Priors must lie in [0,1] and sum to 1 within kNormTol; all states
  /// share one dimension.
  explicit ProbeEnsemble(std::vector<ProbeEntry> entries);

  /// Uniform prior over the given states, labelled by position.
  static ProbeEnsemble uniform(const std::vector<DensityMatrix>& states);
  /// Uniform prior over |0>..|n-1>, labelled "0".."n-1".
  static ProbeEnsemble uniform_fock(std::size_t n, FockDim dim);

  const std::vector<ProbeEntry>& entries() const { return entries_; }
  FockDim dim() const { return entries_.front().state.dim(); }
  /// rho_probe = sum_m Pr(m) rho_m
  DensityMatrix probe_state() const;

 private:
  std::vector<ProbeEntry> entries_;
};

enum class Category { NonProjective, ProjectiveIdeal, ProjectiveNonIdeal };

std::string_view to_string(Category c);
/// Throws std::invalid_argument on an unknown name.
Category category_from_string(std::string_view s);

struct Thresholds {
  double pi_min = 0.99;
  double zeta_min = 0.99;
};

struct Target {
  std::string label;
  StateVector state;
};

struct TargetFigures {
  std::string target;
  double fidelity;
  double detectivity;
};

struct EstimatorReport {
  std::string outcome_label;
  double projectivity;
  double ideality;
  double trace_weight;
  std::vector<TargetFigures> targets;
  Category category;
};

/// Row of a whole-POVM characterization; `report` is empty for null outcomes.
struct OutcomeRow {
  std::string label;
  std::optional<EstimatorReport> report;
};

struct Posterior {
  std::string label;
  double probability;
};

/// Tr{rho Pi}. Values within 1e-9 outside [0,1] are clamped; anything
/// further out throws std::domain_error.
double born_probability(const DensityMatrix& rho, const PovmElement& pi);

/// Pi / Tr{Pi}. Throws NullOutcome when Tr{Pi} <= kTraceFloor.
RetrodictedState retrodicted_state(const PovmElement& pi);

double projectivity(const RetrodictedState& r);

/// Tr{Pi^2} / Tr{Pi}. Throws NullOutcome.
double ideality(const PovmElement& pi);

/// <psi|rho_retr|psi>
double fidelity(const RetrodictedState& r, const StateVector& target);

/// Tr{Pi} Tr{rho_tar rho_retr}; for a null element this degenerates to the
/// Born probability Tr{rho_tar Pi}.
double detectivity(const PovmElement& pi, const DensityMatrix& target);
double detectivity(const PovmElement& pi, const StateVector& target);

Category classify_outcome(double projectivity, double ideality, const Thresholds& t = {});

/// Throws NullOutcome.
EstimatorReport characterize_outcome(const PovmElement& pi, const std::vector<Target>& targets,
                                     const Thresholds& t = {});

std::vector<OutcomeRow> characterize_povm(const Povm& p, const std::vector<Target>& targets,
                                          const Thresholds& t = {});

/// Bayes: Pr(m|n) = Pr(n|rho_m) Pr(m) / Pr(n) with Pr(n) = Tr{rho_probe Pi_n}.
/// Throws UnreachableOutcome when Pr(n) <= kTraceFloor.
std::vector<Posterior> retrodict_ensemble(const Povm& p, const std::string& outcome_label,
                                          const ProbeEnsemble& ensemble);
std::vector<Posterior> retrodict_ensemble(const PovmElement& pi, const ProbeEnsemble& ensemble);

struct PropositionRetrodiction {
  /// Tr{rho_retr Theta_m} with Theta_m = D Pr(m) rho_m.
  std::vector<Posterior> posteriors;
  /// max_ij |(rho_probe - I/D)_ij|; the proposition form equals Bayes only
  /// when this vanishes.
  double probe_deviation;
};

/// Retrodictive probabilities through the retrodicted state and the
/// proposition operators, rather than through Bayes' rule. Cross-check for
/// retrodict_ensemble on uniform probes. Throws NullOutcome.
PropositionRetrodiction retrodict_via_propositions(const PovmElement& pi,
                                                   const ProbeEnsemble& ensemble);

}  // namespace retro
