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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "retro/commands.hpp"
#include "retro/detectors.hpp"
#include "retro/herald.hpp"
#include "retro/io.hpp"
#include "retro/phase_space.hpp"
#include "retro/retrodiction.hpp"
#include "test_util.hpp"

namespace {

using namespace retro;
using retro::testing::Rng;
using Clock = std::chrono::steady_clock;

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [" << what << "]";
    }
  }
  void near(double actual, double expected, double tol, const std::string& what) {
    if (!(std::abs(actual - expected) <= tol)) {
      ok = false;
      detail.precision(17);
      detail << " [" << what << ": " << actual << " vs " << expected << ", tol " << tol << "]";
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Diagonal "on" weights of an APD without dark counts, normalized.
std::vector<double> apd_on_weights(double eta, std::size_t d) {
  std::vector<double> c(d);
  for (std::size_t n = 0; n < d; ++n) c[n] = 1.0 - std::pow(1.0 - eta, static_cast<double>(n));
  const double z = std::accumulate(c.begin(), c.end(), 0.0);
  for (auto& v : c) v /= z;
  return c;
}

double apd_projectivity_oracle(double eta, std::size_t d) {
  double s = 0.0;
  for (double v : apd_on_weights(eta, d)) s += v * v;
  return s;
}

void estimator_identities(Check& c) {
  Rng rng(20260101);
  const auto t0 = Clock::now();
  double worst_zeta = 0.0, worst_kappa = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = retro::testing::random_dim(2, 16, rng);
    PovmElement pi = retro::testing::random_element(d, rng);
    StateVector target = retro::testing::random_state(d, rng);
    RetrodictedState r = retrodicted_state(pi);
    const double proj = projectivity(r);
    const double zeta = ideality(pi);
    const double f = fidelity(r, target);
    const double kappa = detectivity(pi, target);
    worst_zeta = std::max(worst_zeta, std::abs(zeta - proj * pi.trace()));
    worst_kappa = std::max(worst_kappa, std::abs(kappa * proj - zeta * f));
  }
  const double secs = seconds_since(t0);
  c.expect(worst_zeta <= 1e-9, "zeta identity");
  c.expect(worst_kappa <= 1e-10, "kappa identity");
  c.expect(secs < 10.0, "runtime");
  c.detail << " max|zeta-pi*Tr|=" << worst_zeta << " max|kappa*pi-zeta*F|=" << worst_kappa
           << " time=" << secs << "s";
}

void taxonomy(Check& c) {
  for (std::size_t d : {2u, 6u, 12u}) {
    for (const auto& e : ideal_pnr(FockDim(d)).elements) {
      EstimatorReport r = characterize_outcome(e, {});
      c.near(r.projectivity, 1.0, 1e-12, "ideal pi " + e.label);
      c.near(r.ideality, 1.0, 1e-12, "ideal zeta " + e.label);
      c.expect(r.category == Category::ProjectiveIdeal, "ideal category " + e.label);
    }
  }
  EstimatorReport s = characterize_outcome(scaled_projector(fock_state(1, FockDim(6)), 0.3), {});
  c.near(s.projectivity, 1.0, 1e-12, "scaled pi");
  c.near(s.ideality, 0.3, 1e-12, "scaled zeta");
  c.expect(s.category == Category::ProjectiveNonIdeal, "scaled category");

  EstimatorReport on = characterize_outcome(on_off_apd(0.5, 0.0, FockDim(8)).at("on"), {});
  c.near(on.projectivity, apd_projectivity_oracle(0.5, 8), 1e-10, "apd pi");
  c.expect(on.projectivity < 0.99, "apd pi < 0.99");
  c.expect(on.category == Category::NonProjective, "apd category");
  c.detail << " apd on pi=" << on.projectivity;
}

void bayes(Check& c) {
  const FockDim dim(10);
  ProbeEnsemble ens = ProbeEnsemble::uniform_fock(10, dim);
  Povm ideal = ideal_pnr(dim);
  for (std::size_t n = 0; n < 10; ++n) {
    std::vector<Posterior> post = retrodict_ensemble(ideal, std::to_string(n), ens);
    for (std::size_t m = 0; m < 10; ++m) {
      c.near(post[m].probability, m == n ? 1.0 : 0.0, 1e-12, "delta " + std::to_string(n));
    }
  }
  Povm lossy = lossy_pnr(0.6, dim);
  for (int k : {0, 1, 3}) {
    std::vector<Posterior> post = retrodict_ensemble(lossy, std::to_string(k), ens);
    // Pr(k | m) = C(m, k) eta^k (1 - eta)^(m - k)
    std::vector<double> w(10, 0.0);
    for (int m = k; m < 10; ++m) {
      w[m] = std::tgamma(m + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(m - k + 1.0)) *
             std::pow(0.6, k) * std::pow(0.4, m - k);
    }
    const double z = std::accumulate(w.begin(), w.end(), 0.0);
    double total = 0.0;
    for (int m = 0; m < 10; ++m) {
      c.near(post[m].probability, w[m] / z, 1e-10, "lossy k=" + std::to_string(k));
      total += post[m].probability;
    }
    c.near(total, 1.0, 1e-9, "posterior sum");
  }
}

void herald_routes(Check& c) {
  Rng rng(424242);
  const auto t0 = Clock::now();
  double worst = 0.0;
  int count = 0;
  for (double lambda : {0.1, 0.5, 0.8}) {
    for (int trial = 0; trial < 34; ++trial) {
      const std::size_t d = retro::testing::random_dim(10, 30, rng);
      TmsvParams params(lambda, FockDim(d));
      PovmElement pi = retro::testing::random_element(d, rng);
      HeraldResult a = heralded_state(tmsv(params), pi);
      HeraldResult b = heralded_closed_form(params, pi);
      worst = std::max(worst, trace_distance(a.conditional_state, b.conditional_state));
      ++count;
    }
  }
  const double secs = seconds_since(t0);
  c.expect(count >= 100, "count");
  c.expect(worst <= 1e-10, "trace distance");
  c.expect(secs < 60.0, "runtime");
  c.detail << " elements=" << count << " max trace distance=" << worst << " time=" << secs << "s";
}

void retrodictive_limit(Check& c) {
  const FockDim dim(80);
  LimitScan scan = retrodictive_limit_scan(on_off_apd(0.5, 0.0, dim).at("on"), {0.3, 0.6, 0.9}, dim);
  c.expect(scan.strictly_increasing, "apd strictly increasing");
  c.detail << " apd fidelities:";
  for (const auto& pt : scan.points) c.detail << " " << pt.fidelity;
  const FockDim small(40);
  for (std::size_t n : {0u, 1u, 3u}) {
    LimitScan fock = retrodictive_limit_scan(ideal_pnr(small).at(std::to_string(n)),
                                             {0.1, 0.3, 0.5, 0.7}, small);
    for (const auto& pt : fock.points) c.near(pt.fidelity, 1.0, 1e-12, "fock " + std::to_string(n));
  }
}

double one_photon_negativity_oracle() {
  // int |W| - int W = 2 * pi * int_0^{1/2} (1 - 2u) e^{-u} / pi du, Simpson in u = r^2.
  const int n = 4000;
  const double h = 0.5 / n;
  double s = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double u = k * h;
    s += (1.0 - 2.0 * u) * std::exp(-u) * (k == 0 || k == n ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0));
  }
  return 2.0 * s * h / 3.0;
}

void phase_space(Check& c) {
  const double inv_pi = 1.0 / std::numbers::pi;
  DensityMatrix vac = DensityMatrix::pure(fock_state(0, FockDim(10)));
  DensityMatrix one = DensityMatrix::pure(fock_state(1, FockDim(10)));
  c.near(wigner_at(vac, 0, 0), inv_pi, 1e-9, "vacuum W(0,0)");
  c.near(wigner_at(one, 0, 0), -inv_pi, 1e-9, "one W(0,0)");
  const double sum = wigner(vac, PhaseSpaceGrid::square(6.0, 201)).integral();
  c.near(sum, 1.0, 1e-3, "vacuum grid sum");
  const double neg = negativity_volume(wigner(one, PhaseSpaceGrid::square(6.0, 201)));
  const double oracle = one_photon_negativity_oracle();
  c.near(neg, oracle, 1e-2, "negativity");
  Rng rng(6);
  double worst = 1.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = retro::testing::random_dim(2, 16, rng);
    worst = std::min(worst, covariance_matrix(retro::testing::random_density(d, rng)).cov.determinant());
  }
  c.expect(worst >= 0.25 - 1e-9, "det cov");
  c.detail << " grid sum=" << sum << " negativity=" << neg << " oracle=" << oracle
           << " min det=" << worst;
}

void hudson(Check& c) {
  const PhaseSpaceGrid grid = PhaseSpaceGrid::square(6.0, 121);
  NonClassicalityReport sq = nonclassicality_of_measurement(
      scaled_projector(squeezed_vacuum(0.5, FockDim(60)), 0.4), grid);
  c.near(sq.projectivity, 1.0, 1e-10, "squeezed pi");
  c.expect(sq.min_wigner >= -1e-6, "squeezed W >= 0");
  c.expect(sq.gaussianity == Gaussianity::Gaussian, "squeezed Gaussian");
  c.expect(sq.squeezing_witness && sq.is_nonclassical, "squeezed nonclassical");
  c.expect(!sq.hudson_inconsistent, "squeezed flag");

  NonClassicalityReport one =
      nonclassicality_of_measurement(scaled_projector(fock_state(1, FockDim(30)), 0.4), grid);
  c.expect(one.negativity_volume > 1e-6, "one negativity");
  c.expect(one.gaussianity == Gaussianity::NonGaussian, "one NonGaussian");
  c.expect(!one.hudson_inconsistent, "one flag");
  c.detail << " squeezed: min W=" << sq.min_wigner << " gaussianity=" << to_string(sq.gaussianity)
           << "; |1>: negativity=" << one.negativity_volume
           << " gaussianity=" << to_string(one.gaussianity);
}

void cli_io(Check& c) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "retro_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ostringstream out, err;

  Rng rng(8);
  std::vector<PovmElement> parts;
  for (int i = 0; i < 3; ++i) {
    PovmElement e = retro::testing::random_element(7, rng, "e" + std::to_string(i));
    parts.push_back({e.label, e.op * 0.3});
  }
  Povm p = complete_with_rest(std::move(parts));
  const std::string first = (dir / "a.json").string();
  const std::string second = (dir / "b.json").string();
  io::save_povm(p, first);
  io::save_povm(io::load_povm(first), second);
  c.expect(io::read_file(first) == io::read_file(second), "byte-identical round trip");

  const std::string over = (dir / "over.json").string();
  Povm bad{FockDim(3), {{"a", HermitianOperator::identity(FockDim(3)) * 1.5}}, 0};
  io::write_file(over, io::serialize_povm(bad));
  try {
    io::load_povm(over);
    c.expect(false, "overcomplete accepted");
  } catch (const io::PovmValidationError& e) {
    c.near(e.report().completeness_residual, 0.5, 1e-9, "overcomplete residual");
  }

  cli::ModelOptions m;
  m.kind = "apd";
  m.dim = 8;
  m.eta = 0.5;
  m.out_path = (dir / "apd.json").string();
  c.expect(cli::cmd_model(m, out, err) == cli::kOk, "model");
  cli::CharacterizeOptions o;
  o.povm_path = m.out_path;
  o.out_path = (dir / "report.json").string();
  c.expect(cli::cmd_characterize(o, out, err) == cli::kOk, "characterize");
  io::ReportFile r = io::parse_report(io::read_file(o.out_path));
  bool found = false;
  for (const auto& row : r.outcomes) {
    if (row.label != "on" || !row.report) continue;
    found = true;
    c.near(row.report->projectivity, apd_projectivity_oracle(0.5, 8), 1e-10, "file apd pi");
    c.expect(row.report->category == Category::NonProjective, "file apd category");
  }
  c.expect(found, "on row present");
  c.expect(io::verify_report(r).empty(), "report verifies");
  fs::remove_all(dir);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"1 estimator identities", estimator_identities},
      {"2 canonical taxonomy", taxonomy},
      {"3 bayes consistency", bayes},
      {"4 heralding path equivalence", herald_routes},
      {"5 retrodictive limit", retrodictive_limit},
      {"6 phase space", phase_space},
      {"7 hudson corollary", hudson},
      {"8 cli and file io", cli_io},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Check c;
    try {
      run(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail << " [exception: " << e.what() << "]";
    }
    std::printf("%s  criterion %s:%s\n", c.ok ? "PASS" : "FAIL", name.c_str(), c.detail.str().c_str());
    failures += c.ok ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
