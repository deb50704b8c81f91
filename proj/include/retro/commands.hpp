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

// Batch commands behind the `retrodict` executable. Each returns a process
// exit code and writes diagnostics to `err`.

#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "retro/phase_space.hpp"
#include "retro/retrodiction.hpp"

namespace retro::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 2,
  kNumericGuard = 3,
  kIo = 4,
};

struct ModelOptions {
  std::string kind;  // ideal-pnr | lossy-pnr | apd | scaled-projector
  std::size_t dim = 0;
  double eta = 1.0;
  double nu = 0.0;
  std::string target;  // scaled-projector only
  double zeta = 1.0;   // scaled-projector only
  std::string out_path;
};

struct GridOptions {
  double x_min = -6.0, x_max = 6.0;
  double p_min = -6.0, p_max = 6.0;
  std::size_t nx = 121, np = 121;

  PhaseSpaceGrid grid() const { return PhaseSpaceGrid(x_min, x_max, p_min, p_max, nx, np); }
};

struct CharacterizeOptions {
  std::string povm_path;
  std::vector<std::string> targets;
  Thresholds thresholds;
  bool nonclassicality = false;
  GridOptions grid;
  PhaseSpaceTolerances tolerances;
  std::string out_path;  // "-" or empty: stdout
};

struct WignerOptions {
  std::string povm_path;
  std::string outcome;
  GridOptions grid;
  PhaseSpaceTolerances tolerances;
  Thresholds thresholds;
  std::string out_path;  // table; sidecar at out_path + ".report.json"
};

struct HeraldOptions {
  std::string povm_path;
  std::string outcome;
  std::vector<double> lambdas;
  std::optional<std::size_t> dim;  // defaults to the POVM dimension
  std::string out_path;
};

struct RetrodictOptions {
  std::string povm_path;
  std::string outcome;
  std::string ensemble_path;
  std::string out_path;
};

struct VerifyOptions {
  std::string report_path;
};

int cmd_model(const ModelOptions& o, std::ostream& out, std::ostream& err);
int cmd_characterize(const CharacterizeOptions& o, std::ostream& out, std::ostream& err);
int cmd_wigner(const WignerOptions& o, std::ostream& out, std::ostream& err);
int cmd_herald(const HeraldOptions& o, std::ostream& out, std::ostream& err);
int cmd_retrodict(const RetrodictOptions& o, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err);

}  // namespace retro::cli
