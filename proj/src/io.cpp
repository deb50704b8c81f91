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

#include "retro/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "json.hpp"

namespace retro::io {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Writing

int depth(const ojson& j) {
  if (!j.is_array()) return 0;
  int d = 0;
  for (const auto& e : j) d = std::max(d, depth(e));
  return d + 1;
}

bool has_object(const ojson& j) {
  if (j.is_object()) return true;
  if (!j.is_array()) return false;
  for (const auto& e : j) {
    if (has_object(e)) return true;
  }
  return false;
}

// Objects one key per line; arrays of depth <= 2 without objects on a single
// line, so each matrix row sits on its own line.
void emit(const ojson& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      out += pad + ojson(it.key()).dump() + ": ";
      emit(it.value(), indent + 2, out);
      out += (i + 1 < j.size()) ? ",\n" : "\n";
    }
    out += std::string(static_cast<std::size_t>(indent), ' ') + "}";
  } else if (j.is_array() && !j.empty() && (depth(j) > 2 || has_object(j))) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad;
      emit(j[i], indent + 2, out);
      out += (i + 1 < j.size()) ? ",\n" : "\n";
    }
    out += std::string(static_cast<std::size_t>(indent), ' ') + "]";
  } else {
    out += j.dump();
  }
}

std::string to_text(const ojson& j) {
  std::string out;
  emit(j, 0, out);
  out += "\n";
  return out;
}

ojson matrix_to_json(const Matrix& m) {
  ojson rows = ojson::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(ojson::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ojson nonclassicality_to_json(const NonClassicalityReport& r) {
  ojson j;
  j["label"] = r.outcome_label;
  j["projectivity"] = r.projectivity;
  j["min_wigner"] = r.min_wigner;
  j["negativity_volume"] = r.negativity_volume;
  j["min_quadrature_variance"] = r.min_quadrature_variance;
  j["squeezing_witness"] = r.squeezing_witness;
  j["is_nonclassical"] = r.is_nonclassical;
  j["gaussianity"] = std::string(to_string(r.gaussianity));
  j["hudson_inconsistent"] = r.hudson_inconsistent;
  j["warnings"] = r.warnings;
  return j;
}

// ---------------------------------------------------------------------------
// Reading

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError((path.empty() ? std::string("<root>") : path) + ": " + what);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << "line " << line << ", column " << col << ": " << e.what();
    throw ParseError(os.str());
  }
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, "missing field '" + key + "'");
  return *it;
}

std::string child(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string child(const std::string& path, std::size_t index) {
  return path + "[" + std::to_string(index) + "]";
}

double as_double(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "non-finite number");
  return v;
}

std::size_t as_size(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected true or false");
  return j.get<bool>();
}

void check_version(const json& root) {
  const std::string v = as_string(field(root, "format_version", ""), "format_version");
  if (v != kFormatVersion) fail("format_version", "unsupported version '" + v + "'");
}

FockDim parse_dim(const json& root) {
  const std::size_t d = as_size(field(root, "dim", ""), "dim");
  if (d < 2) fail("dim", "must be >= 2");
  return FockDim(d);
}

Matrix matrix_from_json(const json& j, FockDim dim, const std::string& path) {
  const Eigen::Index d = dim.index();
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != d) {
    fail(path, "expected " + std::to_string(d) + " rows");
  }
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const std::string row_path = child(path, static_cast<std::size_t>(i));
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
      fail(row_path, "expected " + std::to_string(d) + " entries");
    }
    for (Eigen::Index k = 0; k < d; ++k) {
      const std::string entry_path = child(row_path, static_cast<std::size_t>(k));
      const json& e = row[static_cast<std::size_t>(k)];
      if (!e.is_array() || e.size() != 2) fail(entry_path, "expected an [re, im] pair");
      m(i, k) = cplx(as_double(e[0], entry_path + "[0]"), as_double(e[1], entry_path + "[1]"));
    }
  }
  return m;
}

EstimatorReport report_from_json(const json& row, const std::string& path) {
  EstimatorReport r;
  r.outcome_label = as_string(field(row, "label", path), child(path, "label"));
  r.trace_weight = as_double(field(row, "trace_weight", path), child(path, "trace_weight"));
  r.projectivity = as_double(field(row, "projectivity", path), child(path, "projectivity"));
  r.ideality = as_double(field(row, "ideality", path), child(path, "ideality"));
  try {
    r.category = category_from_string(as_string(field(row, "category", path), child(path, "category")));
  } catch (const std::invalid_argument& e) {
    fail(child(path, "category"), e.what());
  }
  const json& targets = field(row, "targets", path);
  if (!targets.is_array()) fail(child(path, "targets"), "expected an array");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const std::string tp = child(child(path, "targets"), i);
    r.targets.push_back({as_string(field(targets[i], "target", tp), child(tp, "target")),
                         as_double(field(targets[i], "fidelity", tp), child(tp, "fidelity")),
                         as_double(field(targets[i], "detectivity", tp), child(tp, "detectivity"))});
  }
  return r;
}

NonClassicalityReport nonclassicality_from_json(const json& j, const std::string& path) {
  NonClassicalityReport r;
  r.outcome_label = as_string(field(j, "label", path), child(path, "label"));
  r.projectivity = as_double(field(j, "projectivity", path), child(path, "projectivity"));
  r.min_wigner = as_double(field(j, "min_wigner", path), child(path, "min_wigner"));
  r.negativity_volume =
      as_double(field(j, "negativity_volume", path), child(path, "negativity_volume"));
  r.min_quadrature_variance = as_double(field(j, "min_quadrature_variance", path),
                                        child(path, "min_quadrature_variance"));
  r.squeezing_witness =
      as_bool(field(j, "squeezing_witness", path), child(path, "squeezing_witness"));
  r.is_nonclassical = as_bool(field(j, "is_nonclassical", path), child(path, "is_nonclassical"));
  const std::string g = as_string(field(j, "gaussianity", path), child(path, "gaussianity"));
  if (g == "Gaussian") {
    r.gaussianity = Gaussianity::Gaussian;
  } else if (g == "NonGaussian") {
    r.gaussianity = Gaussianity::NonGaussian;
  } else if (g == "Undetermined") {
    r.gaussianity = Gaussianity::Undetermined;
  } else {
    fail(child(path, "gaussianity"), "unknown value '" + g + "'");
  }
  r.hudson_inconsistent =
      as_bool(field(j, "hudson_inconsistent", path), child(path, "hudson_inconsistent"));
  const json& w = field(j, "warnings", path);
  if (!w.is_array()) fail(child(path, "warnings"), "expected an array");
  for (std::size_t i = 0; i < w.size(); ++i) {
    r.warnings.push_back(as_string(w[i], child(child(path, "warnings"), i)));
  }
  return r;
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return os.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("error while writing '" + path + "'");
}

std::string digest(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 digest failed");
  }
  std::ostringstream os;
  os << "sha256:" << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) os << std::setw(2) << static_cast<int>(md[i]);
  return os.str();
}

std::string serialize_povm(const Povm& p, const Metadata& metadata) {
  ojson root;
  root["format_version"] = std::string(kFormatVersion);
  root["dim"] = p.dim.value();
  root["guard_levels"] = p.guard_levels;
  ojson outcomes = ojson::array();
  for (const auto& e : p.elements) {
    ojson o;
    o["label"] = e.label;
    o["matrix"] = matrix_to_json(e.op.matrix());
    outcomes.push_back(std::move(o));
  }
  root["outcomes"] = std::move(outcomes);
  ojson meta = ojson::object();
  for (const auto& [k, v] : metadata) meta[k] = v;
  root["metadata"] = std::move(meta);
  return to_text(root);
}

PovmFile parse_povm(std::string_view text) {
  const json root = parse_json(text);
  check_version(root);
  const FockDim dim = parse_dim(root);
  std::size_t guard = default_guard_levels(dim);
  if (root.contains("guard_levels")) {
    guard = as_size(root["guard_levels"], "guard_levels");
    if (guard >= dim.value()) fail("guard_levels", "must be below dim");
  }
  const json& outcomes = field(root, "outcomes", "");
  if (!outcomes.is_array() || outcomes.empty()) fail("outcomes", "expected a non-empty array");

  std::vector<std::string> labels;
  std::vector<Matrix> matrices;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const std::string path = child("outcomes", i);
    std::string label = as_string(field(outcomes[i], "label", path), child(path, "label"));
    if (!seen.insert(label).second) fail(child(path, "label"), "duplicate label '" + label + "'");
    matrices.push_back(
        matrix_from_json(field(outcomes[i], "matrix", path), dim, child(path, "matrix")));
    labels.push_back(std::move(label));
  }

  Metadata metadata;
  if (root.contains("metadata")) {
    const json& meta = root["metadata"];
    if (!meta.is_object()) fail("metadata", "expected an object of strings");
    for (auto it = meta.begin(); it != meta.end(); ++it) {
      metadata[it.key()] = as_string(it.value(), child("metadata", it.key()));
    }
  }

  ValidationReport report = validate_matrices(labels, matrices, guard);
  if (!report.pass) throw PovmValidationError(std::move(report));

  Povm p{dim, {}, guard};
  for (std::size_t i = 0; i < labels.size(); ++i) {
    p.elements.push_back({labels[i], HermitianOperator(std::move(matrices[i]))});
  }
  return {std::move(p), std::move(metadata)};
}

PovmFile load_povm_file(const std::string& path) { return parse_povm(read_file(path)); }

Povm load_povm(const std::string& path) { return load_povm_file(path).povm; }

void save_povm(const Povm& p, const std::string& path, const Metadata& metadata) {
  write_file(path, serialize_povm(p, metadata));
}

StateVector parse_state_spec(std::string_view spec, FockDim dim, Warnings* warnings) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("state spec '" + std::string(spec) +
                                "' must look like fock:n, coherent:re,im or squeezed:r");
  }
  const std::string kind(spec.substr(0, colon));
  const std::string args(spec.substr(colon + 1));
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(v)) {
      throw std::invalid_argument("state spec '" + std::string(spec) + "': bad number '" + s + "'");
    }
    return v;
  };
  if (kind == "fock") {
    const double n = number(args);
    if (n < 0 || n != std::floor(n)) {
      throw std::invalid_argument("state spec '" + std::string(spec) + "': level must be a non-negative integer");
    }
    return fock_state(static_cast<std::size_t>(n), dim);
  }
  if (kind == "coherent") {
    const auto comma = args.find(',');
    const double re = number(args.substr(0, comma));
    const double im = comma == std::string::npos ? 0.0 : number(args.substr(comma + 1));
    return coherent_state(cplx(re, im), dim, warnings);
  }
  if (kind == "squeezed") return squeezed_vacuum(number(args), dim);
  throw std::invalid_argument("state spec '" + std::string(spec) + "': unknown kind '" + kind + "'");
}

ProbeEnsemble parse_ensemble(std::string_view text) {
  const json root = parse_json(text);
  check_version(root);
  const FockDim dim = parse_dim(root);
  const json& entries = field(root, "entries", "");
  if (!entries.is_array() || entries.empty()) fail("entries", "expected a non-empty array");
  std::vector<ProbeEntry> out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string path = child("entries", i);
    const json& e = entries[i];
    const std::string label = as_string(field(e, "label", path), child(path, "label"));
    const double prior = as_double(field(e, "prior", path), child(path, "prior"));
    try {
      if (e.contains("matrix")) {
        out.push_back({prior, DensityMatrix(matrix_from_json(e["matrix"], dim, child(path, "matrix"))),
                       label});
      } else if (e.contains("state")) {
        const std::string spec = as_string(e["state"], child(path, "state"));
        out.push_back({prior, DensityMatrix::pure(parse_state_spec(spec, dim)), label});
      } else {
        fail(path, "entry needs a 'matrix' or a 'state'");
      }
    } catch (const std::invalid_argument& ex) {
      fail(path, ex.what());
    } catch (const std::out_of_range& ex) {
      fail(path, ex.what());
    }
  }
  try {
    return ProbeEnsemble(std::move(out));
  } catch (const std::invalid_argument& ex) {
    fail("entries", ex.what());
  }
}

std::string serialize_ensemble(const ProbeEnsemble& e) {
  ojson root;
  root["format_version"] = std::string(kFormatVersion);
  root["dim"] = e.dim().value();
  ojson entries = ojson::array();
  for (const auto& entry : e.entries()) {
    ojson o;
    o["label"] = entry.label;
    o["prior"] = entry.prior;
    o["matrix"] = matrix_to_json(entry.state.matrix());
    entries.push_back(std::move(o));
  }
  root["entries"] = std::move(entries);
  return to_text(root);
}

ProbeEnsemble load_ensemble(const std::string& path) { return parse_ensemble(read_file(path)); }

std::string serialize_report(const ReportFile& r) {
  ojson root;
  root["format_version"] = std::string(kFormatVersion);
  root["tool"] = "retrodict";
  root["tool_version"] = r.tool_version;
  root["input_digest"] = r.input_digest;
  root["thresholds"] = ojson{{"pi_min", r.thresholds.pi_min}, {"zeta_min", r.thresholds.zeta_min}};
  root["targets"] = r.targets;
  ojson rows = ojson::array();
  for (const auto& row : r.outcomes) {
    ojson o;
    o["label"] = row.label;
    o["null_outcome"] = !row.report.has_value();
    if (row.report) {
      const EstimatorReport& e = *row.report;
      o["trace_weight"] = e.trace_weight;
      o["projectivity"] = e.projectivity;
      o["ideality"] = e.ideality;
      o["category"] = std::string(to_string(e.category));
      ojson targets = ojson::array();
      for (const auto& t : e.targets) {
        targets.push_back(
            ojson{{"target", t.target}, {"fidelity", t.fidelity}, {"detectivity", t.detectivity}});
      }
      o["targets"] = std::move(targets);
    }
    rows.push_back(std::move(o));
  }
  root["outcomes"] = std::move(rows);
  if (!r.nonclassicality.empty()) {
    root["wigner_convention"] = std::string(kWignerConvention);
    ojson nc = ojson::array();
    for (const auto& n : r.nonclassicality) nc.push_back(nonclassicality_to_json(n));
    root["nonclassicality"] = std::move(nc);
  }
  return to_text(root);
}

ReportFile parse_report(std::string_view text) {
  const json root = parse_json(text);
  check_version(root);
  ReportFile r;
  r.tool_version = as_string(field(root, "tool_version", ""), "tool_version");
  r.input_digest = as_string(field(root, "input_digest", ""), "input_digest");
  const json& th = field(root, "thresholds", "");
  r.thresholds.pi_min = as_double(field(th, "pi_min", "thresholds"), "thresholds.pi_min");
  r.thresholds.zeta_min = as_double(field(th, "zeta_min", "thresholds"), "thresholds.zeta_min");
  const json& targets = field(root, "targets", "");
  if (!targets.is_array()) fail("targets", "expected an array");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    r.targets.push_back(as_string(targets[i], child("targets", i)));
  }
  const json& rows = field(root, "outcomes", "");
  if (!rows.is_array()) fail("outcomes", "expected an array");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string path = child("outcomes", i);
    const std::string label = as_string(field(rows[i], "label", path), child(path, "label"));
    if (as_bool(field(rows[i], "null_outcome", path), child(path, "null_outcome"))) {
      r.outcomes.push_back({label, std::nullopt});
    } else {
      r.outcomes.push_back({label, report_from_json(rows[i], path)});
    }
  }
  if (root.contains("nonclassicality")) {
    const json& nc = root["nonclassicality"];
    if (!nc.is_array()) fail("nonclassicality", "expected an array");
    for (std::size_t i = 0; i < nc.size(); ++i) {
      r.nonclassicality.push_back(nonclassicality_from_json(nc[i], child("nonclassicality", i)));
    }
  }
  return r;
}

std::vector<std::string> verify_report(const ReportFile& r) {
  std::vector<std::string> problems;
  auto complain = [&](const std::string& label, const std::string& what, double lhs, double rhs) {
    std::ostringstream os;
    os << std::setprecision(17) << "outcome '" << label << "': " << what << " (" << lhs << " vs "
       << rhs << ")";
    problems.push_back(os.str());
  };
  for (const auto& row : r.outcomes) {
    if (!row.report) continue;
    const EstimatorReport& e = *row.report;
    const double expected_ideality = e.projectivity * e.trace_weight;
    if (std::abs(e.ideality - expected_ideality) > 1e-9) {
      complain(row.label, "ideality != projectivity * trace_weight", e.ideality, expected_ideality);
    }
    if (!(e.projectivity > 0.0 && e.projectivity <= 1.0 + 1e-12)) {
      complain(row.label, "projectivity outside (0, 1]", e.projectivity, 1.0);
    }
    for (const auto& t : e.targets) {
      const double lhs = t.detectivity * e.projectivity;
      const double rhs = e.ideality * t.fidelity;
      if (std::abs(lhs - rhs) > 1e-9) {
        complain(row.label + "' target '" + t.target, "detectivity*projectivity != ideality*fidelity",
                 lhs, rhs);
      }
    }
    const Category expected = classify_outcome(e.projectivity, e.ideality, r.thresholds);
    if (expected != e.category) {
      problems.push_back("outcome '" + row.label + "': category " + std::string(to_string(e.category)) +
                         " disagrees with thresholds (expected " + std::string(to_string(expected)) +
                         ")");
    }
  }
  return problems;
}

std::string serialize_nonclassicality(const NonClassicalityReport& r,
                                      const std::string& input_digest) {
  ojson root;
  root["format_version"] = std::string(kFormatVersion);
  root["tool"] = "retrodict";
  root["tool_version"] = std::string(kToolVersion);
  root["input_digest"] = input_digest;
  root["wigner_convention"] = std::string(kWignerConvention);
  root["report"] = nonclassicality_to_json(r);
  return to_text(root);
}

void write_wigner_table(std::ostream& os, const WignerGrid& w) {
  const PhaseSpaceGrid& g = w.grid;
  os << "# convention: " << g.convention() << "\n";
  os << "# x: " << format_double(g.x_min()) << " " << format_double(g.x_max()) << " " << g.nx()
     << "\n";
  os << "# p: " << format_double(g.p_min()) << " " << format_double(g.p_max()) << " " << g.np()
     << "\n";
  os << "x,p,W\n";
  for (std::size_t i = 0; i < g.nx(); ++i) {
    for (std::size_t j = 0; j < g.np(); ++j) {
      os << format_double(g.x(i)) << "," << format_double(g.p(j)) << ","
         << format_double(w.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)))
         << "\n";
    }
  }
}

void write_scan_table(std::ostream& os, const LimitScan& scan, const std::string& outcome_label,
                      const std::string& input_digest) {
  os << "# outcome: " << outcome_label << "\n";
  os << "# input_digest: " << input_digest << "\n";
  os << "# non_decreasing: " << (scan.non_decreasing ? "true" : "false") << "\n";
  os << "# strictly_increasing: " << (scan.strictly_increasing ? "true" : "false") << "\n";
  os << "lambda,fidelity,success_probability\n";
  for (const auto& p : scan.points) {
    os << format_double(p.lambda) << "," << format_double(p.fidelity) << ","
       << format_double(p.success_probability) << "\n";
  }
}

void write_posterior_table(std::ostream& os, const std::vector<Posterior>& posteriors) {
  os << "label,posterior\n";
  for (const auto& p : posteriors) os << p.label << "," << format_double(p.probability) << "\n";
}

}  // namespace retro::io
