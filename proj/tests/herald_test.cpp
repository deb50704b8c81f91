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

#include <chrono>
#include <cmath>
#include <iostream>

#include <gtest/gtest.h>

#include "retro/retrodiction.hpp"
#include "test_util.hpp"

namespace retro {
namespace {

using testing::Rng;

double c2(double lambda, std::size_t d) {
  return (1.0 - lambda * lambda) / (1.0 - std::pow(lambda, 2.0 * static_cast<double>(d)));
}

TEST(Tmsv, AmplitudesAndNorm) {
  TmsvParams params(0.5, FockDim(6));
  StateVector psi = tmsv(params);
  EXPECT_NEAR(psi.amplitudes().norm(), 1.0, 1e-15);
  const double c = std::sqrt(c2(0.5, 6));
  for (Eigen::Index n = 0; n < 6; ++n) {
    EXPECT_NEAR(psi[n * 6 + n].real(), c * std::pow(0.5, n), 1e-15);
  }
  EXPECT_EQ(psi[1].real(), 0.0);
}

TEST(Tmsv, ZeroSqueezingIsVacuum) {
  StateVector psi = tmsv(TmsvParams(0.0, FockDim(4)));
  EXPECT_EQ(psi[0], cplx(1.0, 0.0));
  EXPECT_NEAR(psi.amplitudes().squaredNorm(), 1.0, 0.0);
}

TEST(Tmsv, ParameterValidationAndTail) {
  EXPECT_THROW(TmsvParams(1.0, FockDim(4)), std::invalid_argument);
  EXPECT_THROW(TmsvParams(-0.1, FockDim(4)), std::invalid_argument);
  Warnings warn;
  TmsvParams p(0.9, FockDim(20), &warn);
  EXPECT_NEAR(p.tail(), std::pow(0.9, 40), 1e-18);
  EXPECT_EQ(warn.size(), 1u);
  warn.clear();
  TmsvParams q(0.1, FockDim(20), &warn);
  EXPECT_TRUE(warn.empty());
}

TEST(Tmsv, ReducedStateIsThermal) {
  const double lambda = 0.6;
  const FockDim dim(12);
  DensityMatrix joint = DensityMatrix::pure(tmsv(TmsvParams(lambda, dim)));
  HermitianOperator red = partial_trace_b(joint.as_operator(), dim, dim);
  for (Eigen::Index n = 0; n < 12; ++n) {
    EXPECT_NEAR(red(n, n).real(), c2(lambda, 12) * std::pow(lambda, 2 * n), 1e-14);
  }
}

TEST(Herald, IdentityGivesReducedState) {
  const FockDim dim(10);
  StateVector psi = tmsv(TmsvParams(0.5, dim));
  PovmElement id{"id", HermitianOperator::identity(dim)};
  HeraldResult h = heralded_state(psi, id);
  EXPECT_NEAR(h.success_probability, 1.0, 1e-14);
  HermitianOperator red = partial_trace_b(DensityMatrix::pure(psi).as_operator(), dim, dim);
  EXPECT_LE((h.conditional_state.matrix() - red.matrix()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Herald, SinglePhotonHerald) {
  const FockDim dim(30);
  HeraldResult h = heralded_state(tmsv(TmsvParams(0.5, dim)), ideal_pnr(dim).at("1"));
  EXPECT_NEAR(h.success_probability, 0.1875, 1e-12);
  EXPECT_NEAR(h.conditional_state(1, 1).real(), 1.0, 1e-14);
  EXPECT_EQ(h.outcome_label, "1");
}

TEST(Herald, FockProjectorProbability) {
  const FockDim dim(25);
  for (double lambda : {0.1, 0.5, 0.8}) {
    StateVector psi = tmsv(TmsvParams(lambda, dim));
    for (std::size_t n : {0u, 2u, 4u}) {
      HeraldResult h = heralded_state(psi, ideal_pnr(dim).at(std::to_string(n)));
      EXPECT_NEAR(h.success_probability, c2(lambda, 25) * std::pow(lambda, 2.0 * n), 1e-13);
    }
  }
}

TEST(Herald, ApdClickDiagonal) {
  const FockDim dim(20);
  const double lambda = 0.6;
  HeraldResult h = heralded_state(tmsv(TmsvParams(lambda, dim)), on_off_apd(0.3, 0.0, dim).at("on"));
  std::vector<double> w(20);
  double z = 0.0;
  for (int n = 0; n < 20; ++n) {
    w[n] = std::pow(lambda, 2 * n) * (1.0 - std::pow(0.7, n));
    z += w[n];
  }
  EXPECT_NEAR(h.success_probability, c2(lambda, 20) * z, 1e-13);
  for (int n = 0; n < 20; ++n) {
    EXPECT_NEAR(h.conditional_state(n, n).real(), w[n] / z, 1e-13);
  }
}

TEST(Herald, VanishingProbabilityThrows) {
  const FockDim dim(25);
  EXPECT_THROW(heralded_state(tmsv(TmsvParams(0.1, dim)), ideal_pnr(dim).at("7")), HeraldImpossible);
}

TEST(Herald, ImpossibleOutcomeThrows) {
  const FockDim dim(6);
  EXPECT_THROW(heralded_state(tmsv(TmsvParams(0.0, dim)), ideal_pnr(dim).at("3")), HeraldImpossible);
  EXPECT_THROW(heralded_closed_form(TmsvParams(0.0, dim), ideal_pnr(dim).at("3")), HeraldImpossible);
}

TEST(Herald, DimensionMismatch) {
  EXPECT_THROW(heralded_state(tmsv(TmsvParams(0.5, FockDim(5))), ideal_pnr(FockDim(7)).at("1")),
               std::invalid_argument);
  EXPECT_THROW(heralded_closed_form(TmsvParams(0.5, FockDim(5)), ideal_pnr(FockDim(6)).at("1")),
               std::invalid_argument);
}

TEST(Herald, RoutesAgreeOnRandomElements) {
  Rng rng(2024);
  const auto start = std::chrono::steady_clock::now();
  int checked = 0;
  for (double lambda : {0.1, 0.5, 0.8}) {
    for (int trial = 0; trial < 34; ++trial) {
      const std::size_t d = testing::random_dim(10, 30, rng);
      const FockDim dim(d);
      TmsvParams params(lambda, dim);
      PovmElement pi = testing::random_element(d, rng);
      StateVector psi = tmsv(params);
      HeraldResult pure = heralded_state(psi, pi);
      HeraldResult closed = heralded_closed_form(params, pi);
      EXPECT_LE((pure.conditional_state.matrix() - closed.conditional_state.matrix())
                    .cwiseAbs()
                    .maxCoeff(),
                1e-10);
      EXPECT_NEAR(pure.success_probability, closed.success_probability, 1e-12);
      // Born rule on the joint state with I (x) Pi.
      const double born =
          born_probability(DensityMatrix::pure(psi),
                           {"joint", tensor(HermitianOperator::identity(dim), pi.op)});
      EXPECT_NEAR(pure.success_probability, born, 1e-12);
      if (d <= 16) {
        HeraldResult op = heralded_state(DensityMatrix::pure(psi), pi);
        EXPECT_LE(
            (op.conditional_state.matrix() - closed.conditional_state.matrix()).cwiseAbs().maxCoeff(),
            1e-10);
        EXPECT_NEAR(op.success_probability, closed.success_probability, 1e-12);
      }
      ++checked;
    }
  }
  EXPECT_GE(checked, 100);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(secs, 60.0);
}

TEST(Herald, OperatorRouteOnMixedJointState) {
  // rho_A (x) rho_B heralds rho_A with Pr = Tr{rho_B Pi}.
  Rng rng(3);
  DensityMatrix ra = testing::random_density(4, rng);
  DensityMatrix rb = testing::random_density(5, rng);
  PovmElement pi = testing::random_element(5, rng);
  HeraldResult h = heralded_state(tensor(ra, rb), pi);
  EXPECT_NEAR(h.success_probability, born_probability(rb, pi), 1e-13);
  EXPECT_LE((h.conditional_state.matrix() - ra.matrix()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(LimitScan, FockProjectorIsExact) {
  const FockDim dim(40);
  LimitScan scan = retrodictive_limit_scan(ideal_pnr(dim).at("2"), {0.1, 0.5, 0.8}, dim);
  for (const auto& pt : scan.points) EXPECT_NEAR(pt.fidelity, 1.0, 1e-12);
  EXPECT_TRUE(scan.non_decreasing);
  EXPECT_FALSE(scan.strictly_increasing);
}

TEST(LimitScan, ApdClickApproachesRetrodictedState) {
  const FockDim dim(80);
  std::vector<double> lambdas = {0.9, 0.1, 0.3, 0.5, 0.7};
  LimitScan scan = retrodictive_limit_scan(on_off_apd(0.5, 0.0, dim).at("on"), lambdas, dim);
  ASSERT_EQ(scan.points.size(), 5u);
  EXPECT_DOUBLE_EQ(scan.points.front().lambda, 0.1);
  EXPECT_TRUE(scan.non_decreasing);
  EXPECT_TRUE(scan.strictly_increasing);
  for (std::size_t i = 1; i < scan.points.size(); ++i) {
    EXPECT_GT(scan.points[i].fidelity, scan.points[i - 1].fidelity);
  }
}

TEST(LimitScan, RefusesUnconvergedTruncation) {
  const FockDim dim(30);
  EXPECT_THROW(retrodictive_limit_scan(ideal_pnr(dim).at("1"), {0.5, 0.999}, dim), TruncationError);
  EXPECT_THROW(retrodictive_limit_scan(ideal_pnr(dim).at("1"), {0.5}, FockDim(20)),
               std::invalid_argument);
}

TEST(LimitScan, RandomElementsEmpirical) {
  // Monotonicity is not guaranteed for arbitrary elements; log the fraction.
  Rng rng(17);
  const FockDim dim(40);
  int monotone = 0;
  const int trials = 30;
  for (int t = 0; t < trials; ++t) {
    LimitScan scan = retrodictive_limit_scan(testing::random_element(40, rng),
                                             {0.1, 0.3, 0.5, 0.7}, dim);
    monotone += scan.non_decreasing ? 1 : 0;
    for (const auto& pt : scan.points) {
      EXPECT_GE(pt.fidelity, 0.0);
      EXPECT_LE(pt.fidelity, 1.0 + 1e-9);
    }
  }
  std::cout << "non-decreasing scans: " << monotone << "/" << trials << "\n";
}

}  // namespace
}  // namespace retro
