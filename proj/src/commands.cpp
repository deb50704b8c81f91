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

#include "retro/commands.hpp"

#include <functional>
#include <sstream>

#include "retro/detectors.hpp"
#include "retro/errors.hpp"
#include "retro/herald.hpp"
#include "retro/io.hpp"

namespace retro::cli {

namespace {

// Runs `body`, mapping exceptions to exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const io::PovmValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const io::ParseError& e) {
    err << "error: parse: " << e.what() << "\n";
    return kValidation;
  } catch (const io::IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const NullOutcome& e) {
    err << "error: " << e.what() << "\n";
    return kNumericGuard;
  } catch (const HeraldImpossible& e) {
    err << "error: " << e.what() << "\n";
    return kNumericGuard;
  } catch (const TruncationError& e) {
    err << "error: " << e.what() << "\n";
    return kNumericGuard;
  } catch (const UnreachableOutcome& e) {
    err << "error: " << e.what() << "\n";
    return kNumericGuard;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    io::write_file(path, text);
  }
}

void report_warnings(const Warnings& w, std::ostream& err) {
  for (const auto& msg : w) err << "warning: " << msg << "\n";
}

std::string format_metadata_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

int cmd_model(const ModelOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const FockDim dim(o.dim);
    io::Metadata meta{{"model", o.kind}, {"dim", std::to_string(o.dim)}};
    std::optional<Povm> p;
    if (o.kind == "ideal-pnr") {
      p = ideal_pnr(dim);
    } else if (o.kind == "lossy-pnr") {
      p = lossy_pnr(o.eta, dim);
      meta["eta"] = format_metadata_double(o.eta);
    } else if (o.kind == "apd") {
      p = on_off_apd(o.eta, o.nu, dim);
      meta["eta"] = format_metadata_double(o.eta);
      meta["nu"] = format_metadata_double(o.nu);
    } else if (o.kind == "scaled-projector") {
      if (o.target.empty()) throw std::invalid_argument("scaled-projector needs --target");
      Warnings w;
      StateVector psi = io::parse_state_spec(o.target, dim, &w);
      report_warnings(w, err);
      p = complete_with_rest({scaled_projector(psi, o.zeta, "proj")});
      meta["target"] = o.target;
      meta["zeta"] = format_metadata_double(o.zeta);
    } else {
      throw std::invalid_argument("unknown model kind '" + o.kind +
                                  "' (expected ideal-pnr, lossy-pnr, apd, scaled-projector)");
    }
    ValidationReport report = validate_povm(*p);
    if (!report.pass) throw io::PovmValidationError(std::move(report));
    emit(o.out_path, io::serialize_povm(*p, meta), out);
    return static_cast<int>(kOk);
  });
}

int cmd_characterize(const CharacterizeOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::string text = io::read_file(o.povm_path);
    const io::PovmFile file = io::parse_povm(text);
    const Povm& p = file.povm;

    std::vector<Target> targets;
    Warnings w;
    for (const auto& spec : o.targets) targets.push_back({spec, io::parse_state_spec(spec, p.dim, &w)});
    report_warnings(w, err);

    io::ReportFile report;
    report.tool_version = std::string(io::kToolVersion);
    report.input_digest = io::digest(text);
    report.thresholds = o.thresholds;
    report.targets = o.targets;
    report.outcomes = characterize_povm(p, targets, o.thresholds);
    if (o.nonclassicality) {
      const PhaseSpaceGrid grid = o.grid.grid();
      for (const auto& e : p.elements) {
        if (e.is_null() || !(e.trace() > kTraceFloor)) continue;
        report.nonclassicality.push_back(
            nonclassicality_of_measurement(e, grid, o.tolerances, o.thresholds));
      }
    }
    emit(o.out_path, io::serialize_report(report), out);
    return static_cast<int>(kOk);
  });
}

int cmd_wigner(const WignerOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::string text = io::read_file(o.povm_path);
    const io::PovmFile file = io::parse_povm(text);
    const PovmElement& e = file.povm.at(o.outcome);
    const PhaseSpaceGrid grid = o.grid.grid();

    RetrodictedState r = retrodicted_state(e);
    WignerGrid w = wigner(r.state, grid);
    NonClassicalityReport nc = nonclassicality_of_measurement(e, grid, o.tolerances, o.thresholds);
    report_warnings(nc.warnings, err);

    std::ostringstream table;
    io::write_wigner_table(table, w);
    emit(o.out_path, table.str(), out);
    const std::string sidecar = io::serialize_nonclassicality(nc, io::digest(text));
    if (o.out_path.empty() || o.out_path == "-") {
      err << sidecar;
    } else {
      io::write_file(o.out_path + ".report.json", sidecar);
    }
    return static_cast<int>(kOk);
  });
}

int cmd_herald(const HeraldOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::string text = io::read_file(o.povm_path);
    const io::PovmFile file = io::parse_povm(text);
    const PovmElement& e = file.povm.at(o.outcome);
    const FockDim dim = o.dim ? FockDim(*o.dim) : e.dim();
    Warnings w;
    for (double lam : o.lambdas) TmsvParams(lam, dim, &w);
    report_warnings(w, err);
    LimitScan scan = retrodictive_limit_scan(e, o.lambdas, dim);
    std::ostringstream table;
    io::write_scan_table(table, scan, o.outcome, io::digest(text));
    emit(o.out_path, table.str(), out);
    return static_cast<int>(kOk);
  });
}

int cmd_retrodict(const RetrodictOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Povm p = io::load_povm(o.povm_path);
    const ProbeEnsemble ensemble = io::load_ensemble(o.ensemble_path);
    std::vector<Posterior> post = retrodict_ensemble(p, o.outcome, ensemble);
    std::ostringstream table;
    io::write_posterior_table(table, post);
    emit(o.out_path, table.str(), out);
    return static_cast<int>(kOk);
  });
}

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const io::ReportFile report = io::parse_report(io::read_file(o.report_path));
    const std::vector<std::string> problems = io::verify_report(report);
    for (const auto& msg : problems) err << "violation: " << msg << "\n";
    if (!problems.empty()) return static_cast<int>(kValidation);
    out << "ok: " << report.outcomes.size() << " outcomes consistent\n";
    return static_cast<int>(kOk);
  });
}

}  // namespace retro::cli
