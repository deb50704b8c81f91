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

// retrodict: characterize measurement apparatuses from their POVM.
//
//   retrodict model apd --eta 0.5 --nu 0 --dim 8 -o apd.json
//   retrodict characterize apd.json --target fock:1 -o report.json
//   retrodict wigner apd.json --outcome on -o on.csv
//   retrodict herald apd.json --outcome on --lambda 0.3 --lambda 0.6 --lambda 0.9
//   retrodict retrodict pnr.json --outcome 2 --ensemble uniform.json
//   retrodict verify report.json
//
// Tolerance defaults can be overridden through RETRODICT_* environment
// variables (see --help of each subcommand).

#include <iostream>

#include "CLI11.hpp"
#include "retro/commands.hpp"

namespace {

void add_grid_options(CLI::App* cmd, retro::cli::GridOptions& g) {
  cmd->add_option("--x-min", g.x_min, "Lower x edge")->capture_default_str();
  cmd->add_option("--x-max", g.x_max, "Upper x edge")->capture_default_str();
  cmd->add_option("--p-min", g.p_min, "Lower p edge")->capture_default_str();
  cmd->add_option("--p-max", g.p_max, "Upper p edge")->capture_default_str();
  cmd->add_option("--nx", g.nx, "Points along x")->capture_default_str()->check(CLI::Range(2, 100000));
  cmd->add_option("--np", g.np, "Points along p")->capture_default_str()->check(CLI::Range(2, 100000));
}

void add_threshold_options(CLI::App* cmd, retro::Thresholds& t) {
  cmd->add_option("--pi-min", t.pi_min, "Projectivity threshold for projective outcomes")
      ->envname("RETRODICT_PI_MIN")
      ->capture_default_str();
  cmd->add_option("--zeta-min", t.zeta_min, "Ideality threshold for ideal outcomes")
      ->envname("RETRODICT_ZETA_MIN")
      ->capture_default_str();
}

void add_phase_space_tolerances(CLI::App* cmd, retro::PhaseSpaceTolerances& t) {
  cmd->add_option("--neg-tol", t.neg_tol, "Negativity dead-band")
      ->envname("RETRODICT_NEG_TOL")
      ->capture_default_str();
  cmd->add_option("--sq-tol", t.sq_tol, "Squeezing dead-band")
      ->envname("RETRODICT_SQ_TOL")
      ->capture_default_str();
  cmd->add_option("--gauss-tol", t.gauss_tol, "Gaussian overlap tolerance")
      ->envname("RETRODICT_GAUSS_TOL")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace retro::cli;

  CLI::App app{"Characterize quantum measurement apparatuses through retrodicted states"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "retrodict 0.1.0");

  ModelOptions model;
  auto* model_cmd = app.add_subcommand("model", "Write a detector-model POVM file");
  model_cmd->add_option("kind", model.kind, "ideal-pnr | lossy-pnr | apd | scaled-projector")
      ->required();
  model_cmd->add_option("--dim", model.dim, "Fock truncation dimension")->required();
  model_cmd->add_option("--eta", model.eta, "Detection efficiency")->capture_default_str();
  model_cmd->add_option("--nu", model.nu, "Dark-count probability (apd)")->capture_default_str();
  model_cmd->add_option("--target", model.target, "State spec for scaled-projector");
  model_cmd->add_option("--zeta", model.zeta, "Efficiency of scaled-projector")->capture_default_str();
  model_cmd->add_option("-o,--out", model.out_path, "Output file (default stdout)");

  CharacterizeOptions characterize;
  auto* char_cmd = app.add_subcommand("characterize", "Per-outcome estimator report");
  char_cmd->add_option("povm", characterize.povm_path, "POVM file")->required();
  char_cmd->add_option("-t,--target", characterize.targets,
                       "Target state: fock:n | coherent:re,im | squeezed:r (repeatable)");
  char_cmd->add_flag("--nonclassicality", characterize.nonclassicality,
                     "Add phase-space witnesses per outcome");
  add_threshold_options(char_cmd, characterize.thresholds);
  add_phase_space_tolerances(char_cmd, characterize.tolerances);
  add_grid_options(char_cmd, characterize.grid);
  char_cmd->add_option("-o,--out", characterize.out_path, "Report file (default stdout)");

  WignerOptions wig;
  auto* wig_cmd = app.add_subcommand("wigner", "Wigner function of a retrodicted state");
  wig_cmd->add_option("povm", wig.povm_path, "POVM file")->required();
  wig_cmd->add_option("--outcome", wig.outcome, "Outcome label")->required();
  add_grid_options(wig_cmd, wig.grid);
  add_threshold_options(wig_cmd, wig.thresholds);
  add_phase_space_tolerances(wig_cmd, wig.tolerances);
  wig_cmd->add_option("-o,--out", wig.out_path,
                      "Table file; witnesses go to <out>.report.json (default stdout/stderr)");

  HeraldOptions herald;
  std::size_t herald_dim = 0;
  auto* herald_cmd = app.add_subcommand("herald", "Heralded TMSV preparation scan over lambda");
  herald_cmd->add_option("povm", herald.povm_path, "POVM file for mode B")->required();
  herald_cmd->add_option("--outcome", herald.outcome, "Outcome label")->required();
  herald_cmd->add_option("-l,--lambda", herald.lambdas, "TMSV parameter in [0, 1) (repeatable)")
      ->required();
  auto* herald_dim_opt =
      herald_cmd->add_option("--dim", herald_dim, "Per-mode dimension (default: POVM dim)");
  herald_cmd->add_option("-o,--out", herald.out_path, "Output table (default stdout)");

  RetrodictOptions retro_opts;
  auto* retro_cmd = app.add_subcommand("retrodict", "Bayesian posterior over a probe ensemble");
  retro_cmd->add_option("povm", retro_opts.povm_path, "POVM file")->required();
  retro_cmd->add_option("--outcome", retro_opts.outcome, "Outcome label")->required();
  retro_cmd->add_option("--ensemble", retro_opts.ensemble_path, "Ensemble file")->required();
  retro_cmd->add_option("-o,--out", retro_opts.out_path, "Output table (default stdout)");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Re-check estimator identities in a report");
  verify_cmd->add_option("report", verify.report_path, "Report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }

  if (*herald_dim_opt) herald.dim = herald_dim;

  if (*model_cmd) return cmd_model(model, std::cout, std::cerr);
  if (*char_cmd) return cmd_characterize(characterize, std::cout, std::cerr);
  if (*wig_cmd) return cmd_wigner(wig, std::cout, std::cerr);
  if (*herald_cmd) return cmd_herald(herald, std::cout, std::cerr);
  if (*retro_cmd) return cmd_retrodict(retro_opts, std::cout, std::cerr);
  if (*verify_cmd) return cmd_verify(verify, std::cout, std::cerr);
  return kValidation;
}
