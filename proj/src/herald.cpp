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

#include "retro/herald.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "retro/retrodiction.hpp"

namespace retro {

namespace {

HeraldResult normalize_herald(const Matrix& unnormalized, double probability,
                              const std::string& label) {
  if (!(probability > kTraceFloor)) {
    std::ostringstream os;
    os << "herald on outcome '" << label << "' has success probability " << probability;
    throw HeraldImpossible(os.str());
  }
  Matrix rho = unnormalized / unnormalized.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return {DensityMatrix(std::move(rho)), probability, label};
}

}  // namespace

TmsvParams::TmsvParams(double lambda, FockDim dim, Warnings* warnings)
    : lambda_(lambda), dim_(dim) {
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    std::ostringstream os;
    os << "TmsvParams: lambda = " << lambda << " outside [0, 1)";
    throw std::invalid_argument(os.str());
  }
  if (warnings && tail() > kTailTol) {
    std::ostringstream os;
    os << "TmsvParams: truncated weight lambda^(2*dim) = " << tail() << " exceeds " << kTailTol;
    warnings->push_back(os.str());
  }
}

double TmsvParams::tail() const {
  return std::pow(lambda_, 2.0 * static_cast<double>(dim_.value()));
}

StateVector tmsv(const TmsvParams& params) {
  const Eigen::Index d = params.dim().index();
  Vector v = Vector::Zero(d * d);
  const double scale = std::sqrt(1.0 - params.lambda() * params.lambda());
  double amp = scale;
  for (Eigen::Index n = 0; n < d; ++n) {
    v(n * d + n) = amp;
    amp *= params.lambda();
  }
  return StateVector::normalized(std::move(v));
}

HeraldResult heralded_state(const StateVector& psi_ab, const PovmElement& pi_b) {
  const Eigen::Index db = pi_b.dim().index();
  const Eigen::Index total = psi_ab.amplitudes().size();
  if (total % db != 0 || total / db < 2) {
    throw std::invalid_argument("heralded_state: joint state does not factor over dim(Pi)");
  }
  const Eigen::Index da = total / db;
  // Row i_A of `psi` holds the B amplitudes psi_{(i_A, .)}.
  Matrix psi(da, db);
  for (Eigen::Index i = 0; i < da; ++i) psi.row(i) = psi_ab.amplitudes().segment(i * db, db).transpose();
  // phi = (1 x Pi) psi; rows transform as Pi acting on each B vector.
  const Matrix phi = psi * pi_b.op.matrix().transpose();
  // Tr_B |psi><phi|: (i, j) -> sum_k psi_{(i,k)} conj(phi_{(j,k)}).
  const Matrix reduced = psi * phi.adjoint();
  return normalize_herald(reduced, reduced.trace().real(), pi_b.label);
}

HeraldResult heralded_state(const DensityMatrix& rho_ab, const PovmElement& pi_b) {
  const FockDim db = pi_b.dim();
  const std::size_t total = rho_ab.dim().value();
  if (total % db.value() != 0 || total / db.value() < 2) {
    throw std::invalid_argument("heralded_state: joint state does not factor over dim(Pi)");
  }
  const FockDim da(total / db.value());
  const HermitianOperator lift = tensor(HermitianOperator::identity(da), pi_b.op);
  const Matrix product = rho_ab.matrix() * lift.matrix();
  const Matrix reduced = partial_trace_b(product, da, db);
  return normalize_herald(reduced, product.trace().real(), pi_b.label);
}

HeraldResult heralded_closed_form(const TmsvParams& params, const PovmElement& pi_b) {
  if (params.dim() != pi_b.dim()) {
    throw std::invalid_argument("heralded_closed_form: TMSV and element dimensions differ");
  }
  const Eigen::Index d = params.dim().index();
  const double lam = params.lambda();
  Eigen::VectorXd powers(d);
  for (Eigen::Index n = 0; n < d; ++n) powers(n) = std::pow(lam, static_cast<double>(n));
  const Matrix k = powers.asDiagonal() * pi_b.op.matrix().conjugate() * powers.asDiagonal();
  const double norm = (lam == 0.0) ? 1.0 : (1.0 - lam * lam) / (1.0 - params.tail());
  return normalize_herald(k, norm * k.trace().real(), pi_b.label);
}

LimitScan retrodictive_limit_scan(const PovmElement& pi_b, std::vector<double> lambdas,
                                  FockDim dim) {
  if (dim != pi_b.dim()) {
    std::ostringstream os;
    os << "retrodictive_limit_scan: dim " << dim.value() << " differs from the element's "
       << pi_b.dim().value();
    throw std::invalid_argument(os.str());
  }
  if (lambdas.empty()) throw std::invalid_argument("retrodictive_limit_scan: no lambda values");
  std::sort(lambdas.begin(), lambdas.end());
  const DensityMatrix reference = conjugate_in_fock(retrodicted_state(pi_b).state);

  LimitScan scan{{}, true, true};
  for (double lam : lambdas) {
    TmsvParams params(lam, dim);
    if (params.tail() > kTailRefuseTol) {
      std::ostringstream os;
      os << "lambda = " << lam << " at dim " << dim.value() << " leaves truncated weight "
         << params.tail() << " > " << kTailRefuseTol << "; increase dim";
      throw TruncationError(os.str());
    }
    HeraldResult h = heralded_closed_form(params, pi_b);
    scan.points.push_back({lam, uhlmann_fidelity(h.conditional_state, reference),
                           h.success_probability});
  }
  for (std::size_t i = 1; i < scan.points.size(); ++i) {
    const double prev = scan.points[i - 1].fidelity;
    const double cur = scan.points[i].fidelity;
    if (cur < prev - 1e-12) scan.non_decreasing = false;
    if (!(cur > prev)) scan.strictly_increasing = false;
  }
  return scan;
}

}  // namespace retro
