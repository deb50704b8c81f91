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

#include "retro/retrodiction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace retro {

namespace {

// Tr{A B} for Hermitian A, B.
double trace_product(const Matrix& a, const Matrix& b) {
  return (a.transpose().cwiseProduct(b)).sum().real();
}

void require_same_dim(FockDim a, FockDim b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a.value() << " vs " << b.value() << ")";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

ProbeEnsemble::ProbeEnsemble(std::vector<ProbeEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("ProbeEnsemble: no entries");
  double total = 0.0;
  for (const auto& e : entries_) {
    if (!(e.prior >= 0.0 && e.prior <= 1.0)) {
      throw std::invalid_argument("ProbeEnsemble: prior of '" + e.label + "' outside [0, 1]");
    }
    require_same_dim(e.state.dim(), entries_.front().state.dim(), "ProbeEnsemble");
    total += e.prior;
  }
  if (std::abs(total - 1.0) > kNormTol) {
    std::ostringstream os;
    os << "ProbeEnsemble: priors sum to " << total << ", not 1";
    throw std::invalid_argument(os.str());
  }
}

ProbeEnsemble ProbeEnsemble::uniform(const std::vector<DensityMatrix>& states) {
  std::vector<ProbeEntry> entries;
  const double w = 1.0 / static_cast<double>(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    entries.push_back({w, states[i], std::to_string(i)});
  }
  return ProbeEnsemble(std::move(entries));
}

ProbeEnsemble ProbeEnsemble::uniform_fock(std::size_t n, FockDim dim) {
  std::vector<DensityMatrix> states;
  for (std::size_t m = 0; m < n; ++m) states.push_back(DensityMatrix::pure(fock_state(m, dim)));
  return uniform(states);
}

DensityMatrix ProbeEnsemble::probe_state() const {
  Matrix sum = Matrix::Zero(dim().index(), dim().index());
  for (const auto& e : entries_) sum += e.prior * e.state.matrix();
  return DensityMatrix(std::move(sum));
}

std::string_view to_string(Category c) {
  switch (c) {
    case Category::NonProjective:
      return "NonProjective";
    case Category::ProjectiveIdeal:
      return "ProjectiveIdeal";
    case Category::ProjectiveNonIdeal:
      return "ProjectiveNonIdeal";
  }
  return "?";
}

Category category_from_string(std::string_view s) {
  if (s == "NonProjective") return Category::NonProjective;
  if (s == "ProjectiveIdeal") return Category::ProjectiveIdeal;
  if (s == "ProjectiveNonIdeal") return Category::ProjectiveNonIdeal;
  throw std::invalid_argument("unknown category '" + std::string(s) + "'");
}

double born_probability(const DensityMatrix& rho, const PovmElement& pi) {
  require_same_dim(rho.dim(), pi.dim(), "born_probability");
  double p = trace_product(rho.matrix(), pi.op.matrix());
  if (p < -1e-9 || p > 1.0 + 1e-9) {
    std::ostringstream os;
    os << "born_probability: Tr{rho Pi} = " << p << " outside [0, 1]; invalid state or element";
    throw std::domain_error(os.str());
  }
  return std::clamp(p, 0.0, 1.0);
}

RetrodictedState retrodicted_state(const PovmElement& pi) {
  const double w = pi.trace();
  if (!(w > kTraceFloor)) {
    std::ostringstream os;
    os << "outcome '" << pi.label << "' is null (Tr{Pi} = " << w << ")";
    throw NullOutcome(os.str());
  }
  return {DensityMatrix(pi.op.matrix() / w), pi.label, w};
}

double projectivity(const RetrodictedState& r) { return r.state.purity(); }

double ideality(const PovmElement& pi) {
  const double w = pi.trace();
  if (!(w > kTraceFloor)) {
    std::ostringstream os;
    os << "outcome '" << pi.label << "' is null (Tr{Pi} = " << w << ")";
    throw NullOutcome(os.str());
  }
  return pi.op.matrix().cwiseAbs2().sum() / w;
}

double fidelity(const RetrodictedState& r, const StateVector& target) {
  require_same_dim(r.state.dim(), target.dim(), "fidelity");
  const Vector& psi = target.amplitudes();
  return psi.dot(r.state.matrix() * psi).real();
}

double detectivity(const PovmElement& pi, const DensityMatrix& target) {
  require_same_dim(pi.dim(), target.dim(), "detectivity");
  if (!(pi.trace() > kTraceFloor)) return trace_product(target.matrix(), pi.op.matrix());
  RetrodictedState r = retrodicted_state(pi);
  return r.trace_weight * trace_product(target.matrix(), r.state.matrix());
}

double detectivity(const PovmElement& pi, const StateVector& target) {
  return detectivity(pi, DensityMatrix::pure(target));
}

Category classify_outcome(double projectivity, double ideality, const Thresholds& t) {
  if (projectivity < t.pi_min) return Category::NonProjective;
  return ideality >= t.zeta_min ? Category::ProjectiveIdeal : Category::ProjectiveNonIdeal;
}

EstimatorReport characterize_outcome(const PovmElement& pi, const std::vector<Target>& targets,
                                     const Thresholds& t) {
  RetrodictedState r = retrodicted_state(pi);
  EstimatorReport rep{pi.label, projectivity(r), ideality(pi), r.trace_weight, {},
                      Category::NonProjective};
  rep.category = classify_outcome(rep.projectivity, rep.ideality, t);
  for (const auto& target : targets) {
    rep.targets.push_back({target.label, fidelity(r, target.state), detectivity(pi, target.state)});
  }
  return rep;
}

std::vector<OutcomeRow> characterize_povm(const Povm& p, const std::vector<Target>& targets,
                                          const Thresholds& t) {
  std::vector<OutcomeRow> rows;
  for (const auto& e : p.elements) {
    if (e.trace() > kTraceFloor) {
      rows.push_back({e.label, characterize_outcome(e, targets, t)});
    } else {
      rows.push_back({e.label, std::nullopt});
    }
  }
  return rows;
}

std::vector<Posterior> retrodict_ensemble(const PovmElement& pi, const ProbeEnsemble& ensemble) {
  require_same_dim(pi.dim(), ensemble.dim(), "retrodict_ensemble");
  std::vector<double> joint;
  double marginal = 0.0;
  for (const auto& e : ensemble.entries()) {
    joint.push_back(born_probability(e.state, pi) * e.prior);
    marginal += joint.back();
  }
  if (!(marginal > kTraceFloor)) {
    std::ostringstream os;
    os << "outcome '" << pi.label << "' is unreachable from the ensemble (Pr(n) = " << marginal
       << ")";
    throw UnreachableOutcome(os.str());
  }
  std::vector<Posterior> out;
  for (std::size_t m = 0; m < joint.size(); ++m) {
    out.push_back({ensemble.entries()[m].label, joint[m] / marginal});
  }
  return out;
}

std::vector<Posterior> retrodict_ensemble(const Povm& p, const std::string& outcome_label,
                                          const ProbeEnsemble& ensemble) {
  return retrodict_ensemble(p.at(outcome_label), ensemble);
}

PropositionRetrodiction retrodict_via_propositions(const PovmElement& pi,
                                                   const ProbeEnsemble& ensemble) {
  require_same_dim(pi.dim(), ensemble.dim(), "retrodict_via_propositions");
  RetrodictedState r = retrodicted_state(pi);
  const FockDim dim = ensemble.dim();
  const double d = static_cast<double>(dim.value());
  PropositionRetrodiction out;
  for (const auto& e : ensemble.entries()) {
    Matrix theta = d * e.prior * e.state.matrix();
    out.posteriors.push_back({e.label, trace_product(r.state.matrix(), theta)});
  }
  Matrix dev = ensemble.probe_state().matrix() - Matrix::Identity(dim.index(), dim.index()) / d;
  out.probe_deviation = dev.cwiseAbs().maxCoeff();
  return out;
}

}  // namespace retro
