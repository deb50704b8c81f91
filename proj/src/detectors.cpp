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

#include "retro/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace retro {

namespace {

void require_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream os;
    os << what << " = " << v << " outside [0, 1]";
    throw std::invalid_argument(os.str());
  }
}

double binomial(std::size_t m, std::size_t n) {
  double c = 1.0;
  for (std::size_t k = 1; k <= n; ++k) {
    c = c * static_cast<double>(m - n + k) / static_cast<double>(k);
  }
  return c;
}

HermitianOperator diagonal(const Eigen::VectorXd& d) {
  Matrix m = Matrix::Zero(d.size(), d.size());
  m.diagonal() = d.cast<cplx>();
  return HermitianOperator(std::move(m));
}

}  // namespace

const PovmElement* Povm::find(const std::string& label) const {
  auto it = std::find_if(elements.begin(), elements.end(),
                         [&](const PovmElement& e) { return e.label == label; });
  return it == elements.end() ? nullptr : &*it;
}

const PovmElement& Povm::at(const std::string& label) const {
  const PovmElement* e = find(label);
  if (!e) throw std::out_of_range("POVM has no outcome labelled '" + label + "'");
  return *e;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  os << (pass ? "valid" : "INVALID") << " POVM: completeness residual " << completeness_residual
     << " on " << checked_levels << " levels";
  for (const auto& e : elements) {
    if (!e.hermitian) os << "; '" << e.label << "' not Hermitian (" << e.hermiticity_defect << ")";
    if (!e.positive) os << "; '" << e.label << "' negative eigenvalue " << e.min_eigenvalue;
    if (!e.bounded) os << "; '" << e.label << "' eigenvalue " << e.max_eigenvalue << " > 1";
  }
  if (completeness_residual > kCompletenessTol) os << "; elements do not sum to identity";
  return os.str();
}

std::size_t default_guard_levels(FockDim dim) { return (dim.value() + 4) / 5; }

Povm ideal_pnr(FockDim dim) {
  Povm p{dim, {}, 0};
  for (std::size_t n = 0; n < dim.value(); ++n) {
    p.elements.push_back({std::to_string(n), fock_state(n, dim).projector()});
  }
  return p;
}

Povm lossy_pnr(double eta, FockDim dim) {
  require_unit_interval(eta, "lossy_pnr: eta");
  const std::size_t d = dim.value();
  Povm p{dim, {}, 0};
  for (std::size_t n = 0; n < d; ++n) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(dim.index());
    for (std::size_t m = n; m < d; ++m) {
      w(static_cast<Eigen::Index>(m)) = binomial(m, n) * std::pow(eta, static_cast<double>(n)) *
                                       std::pow(1.0 - eta, static_cast<double>(m - n));
    }
    p.elements.push_back({std::to_string(n), diagonal(w)});
  }
  return p;
}

Povm on_off_apd(double eta, double nu, FockDim dim) {
  require_unit_interval(eta, "on_off_apd: eta");
  if (!(nu >= 0.0 && nu < 1.0)) {
    std::ostringstream os;
    os << "on_off_apd: nu = " << nu << " outside [0, 1)";
    throw std::invalid_argument(os.str());
  }
  Eigen::VectorXd off(dim.index());
  for (Eigen::Index n = 0; n < dim.index(); ++n) {
    off(n) = (1.0 - nu) * std::pow(1.0 - eta, static_cast<double>(n));
  }
  Eigen::VectorXd on = Eigen::VectorXd::Ones(dim.index()) - off;
  return Povm{dim, {{"off", diagonal(off)}, {"on", diagonal(on)}}, 0};
}

PovmElement scaled_projector(const StateVector& psi, double zeta, std::string label) {
  if (!(zeta > 0.0 && zeta <= 1.0)) {
    std::ostringstream os;
    os << "scaled_projector: zeta = " << zeta << " outside (0, 1]";
    throw std::invalid_argument(os.str());
  }
  return {std::move(label), psi.projector() * zeta};
}

Povm complete_with_rest(std::vector<PovmElement> elements) {
  if (elements.empty()) throw std::invalid_argument("complete_with_rest: no elements");
  const FockDim dim = elements.front().dim();
  Matrix rest = Matrix::Identity(dim.index(), dim.index());
  for (const auto& e : elements) {
    if (e.dim() != dim) throw std::invalid_argument("complete_with_rest: dimension mismatch");
    rest -= e.op.matrix();
  }
  auto eig = eig_hermitian(HermitianOperator::symmetrized(rest));
  const double min_eig = eig.values(0);
  if (min_eig < -kPsdTol) {
    std::ostringstream os;
    os << "complete_with_rest: elements sum beyond identity (rest eigenvalue " << min_eig << ")";
    throw std::invalid_argument(os.str());
  }
  if (min_eig < 0.0) {
    Eigen::VectorXd clipped = eig.values.cwiseMax(0.0);
    rest = eig.vectors * clipped.asDiagonal() * eig.vectors.adjoint();
  }
  elements.push_back({"rest", HermitianOperator::symmetrized(rest)});
  return Povm{dim, std::move(elements), 0};
}

ValidationReport validate_matrices(const std::vector<std::string>& labels,
                                   const std::vector<Matrix>& matrices,
                                   std::size_t guard_levels) {
  if (labels.size() != matrices.size()) {
    throw std::invalid_argument("validate_matrices: label/matrix count mismatch");
  }
  ValidationReport report;
  if (matrices.empty()) {
    report.completeness_residual = 1.0;
    return report;
  }
  const Eigen::Index d = matrices.front().rows();
  if (guard_levels >= static_cast<std::size_t>(d)) {
    throw std::invalid_argument("validate_matrices: guard_levels must be below dim");
  }
  bool ok = true;
  Matrix sum = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    const Matrix& m = matrices[i];
    if (m.rows() != d || m.cols() != d) {
      throw std::invalid_argument("validate_matrices: element '" + labels[i] +
                                  "' has mismatched dimension");
    }
    ElementCheck c;
    c.label = labels[i];
    c.hermiticity_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
    c.hermitian = c.hermiticity_defect <= kHermTol;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    c.min_eigenvalue = es.eigenvalues()(0);
    c.max_eigenvalue = es.eigenvalues()(d - 1);
    c.positive = c.min_eigenvalue >= -kPsdTol;
    c.bounded = c.max_eigenvalue <= 1.0 + kPsdTol;
    c.trace = m.trace().real();
    c.null_outcome = c.trace < kNullTrace;
    ok = ok && c.hermitian && c.positive && c.bounded;
    report.elements.push_back(std::move(c));
    sum += m;
  }
  const Eigen::Index k = d - static_cast<Eigen::Index>(guard_levels);
  report.checked_levels = static_cast<std::size_t>(k);
  Matrix defect = sum.topLeftCorner(k, k) - Matrix::Identity(k, k);
  report.completeness_residual = defect.cwiseAbs().maxCoeff();
  report.pass = ok && report.completeness_residual <= kCompletenessTol;
  return report;
}

ValidationReport validate_povm(const Povm& p) {
  std::vector<std::string> labels;
  std::vector<Matrix> matrices;
  for (const auto& e : p.elements) {
    if (e.dim() != p.dim) throw std::invalid_argument("validate_povm: element dimension mismatch");
    labels.push_back(e.label);
    matrices.push_back(e.op.matrix());
  }
  return validate_matrices(labels, matrices, p.guard_levels);
}

}  // namespace retro
