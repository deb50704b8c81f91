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

// File formats: POVM files, probe-ensemble files, characterization reports
// and the delimiter-separated Wigner/scan tables.
//
// POVM and ensemble files are JSON with complex matrices written as
// row-major arrays of [re, im] pairs, one row per line. Doubles are written
// in shortest round-trip form, so save -> load -> save is byte-identical.

#pragma once

#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "retro/detectors.hpp"
#include "retro/herald.hpp"
#include "retro/phase_space.hpp"
#include "retro/retrodiction.hpp"

namespace retro::io {

inline constexpr std::string_view kFormatVersion = "1";
inline constexpr std::string_view kToolVersion = "0.1.0";

using Metadata = std::map<std::string, std::string>;

/// Malformed file content. The message carries line/column for syntax errors
/// and a field path (e.g. outcomes[1].matrix[0][2]) for schema errors.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed POVM file whose elements fail validate_povm.
class PovmValidationError : public std::runtime_error {
 public:
  explicit PovmValidationError(ValidationReport report)
      : std::runtime_error(report.summary()), report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

struct PovmFile {
  Povm povm;
  Metadata metadata;
};

struct ReportFile {
  std::string tool_version;
  std::string input_digest;
  Thresholds thresholds;
  std::vector<std::string> targets;
  std::vector<OutcomeRow> outcomes;
  std::vector<NonClassicalityReport> nonclassicality;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

/// "sha256:<hex>"
std::string digest(std::string_view bytes);

std::string serialize_povm(const Povm& p, const Metadata& metadata = {});
/// Missing guard_levels defaults to default_guard_levels(dim). Throws
/// ParseError or PovmValidationError.
PovmFile parse_povm(std::string_view text);
PovmFile load_povm_file(const std::string& path);
Povm load_povm(const std::string& path);
void save_povm(const Povm& p, const std::string& path, const Metadata& metadata = {});

/// Entries carry "label", "prior" and either "matrix" or a "state" spec
/// (see parse_state_spec).
ProbeEnsemble parse_ensemble(std::string_view text);
std::string serialize_ensemble(const ProbeEnsemble& e);
ProbeEnsemble load_ensemble(const std::string& path);

/// fock:n | coherent:re,im | squeezed:r. Throws std::invalid_argument.
StateVector parse_state_spec(std::string_view spec, FockDim dim, Warnings* warnings = nullptr);

std::string serialize_report(const ReportFile& r);
ReportFile parse_report(std::string_view text);

/// Re-checks the estimator identities (zeta = pi Tr{Pi}, kappa pi = zeta F, both
/// to 1e-9) and the categories against the persisted thresholds. Returns one
/// message per violation.
std::vector<std::string> verify_report(const ReportFile& r);

std::string serialize_nonclassicality(const NonClassicalityReport& r,
                                      const std::string& input_digest);

/// Comment header (convention, axes) followed by x,p,W rows, x-major.
void write_wigner_table(std::ostream& os, const WignerGrid& w);

void write_scan_table(std::ostream& os, const LimitScan& scan, const std::string& outcome_label,
                      const std::string& input_digest);

void write_posterior_table(std::ostream& os, const std::vector<Posterior>& posteriors);

}  // namespace retro::io
