// Copyright 2026 The qikit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qikit/io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "qikit/version.hpp"

namespace qikit {

namespace {

const json& require_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw SchemaError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

std::string require_string(const json& j, const char* key) {
  const json& field = require_field(j, key);
  if (!field.is_string()) {
    throw SchemaError(std::string("field '") + key + "' must be a string");
  }
  return field.get<std::string>();
}

int require_int(const json& j, const char* key) {
  const json& field = require_field(j, key);
  if (!field.is_number_integer()) {
    throw SchemaError(std::string("field '") + key + "' must be an integer");
  }
  return field.get<int>();
}

void check_header(const json& j) {
  if (require_string(j, "format_version") != kFormatVersion) {
    throw SchemaError("unsupported format_version");
  }
  if (require_string(j, "pauli_order") != kPauliOrderToken) {
    throw SchemaError("pauli_order must be exactly \"" +
                      std::string(kPauliOrderToken) + "\"");
  }
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json double_or_null(double x) {
  if (std::isnan(x)) return nullptr;
  return x;
}

Eigen::MatrixXd ptm_entries_from_json(const json& field, Eigen::Index d2,
                                      const std::string& what) {
  if (!field.is_array() ||
      field.size() != static_cast<std::size_t>(d2 * d2)) {
    throw SchemaError(what + " must be a flat row-major array of " +
                      std::to_string(d2 * d2) + " numbers");
  }
  Eigen::MatrixXd m(d2, d2);
  std::size_t idx = 0;
  for (Eigen::Index r = 0; r < d2; ++r) {
    for (Eigen::Index c = 0; c < d2; ++c, ++idx) {
      const json& value = field.at(idx);
      if (!value.is_number()) {
        throw SchemaError(what + " entry " + std::to_string(idx) +
                          " is not a number");
      }
      m(r, c) = value.get<double>();
    }
  }
  return m;
}

json ptm_entries_to_json(const Ptm& ptm) {
  json flat = json::array();
  for (Eigen::Index r = 0; r < ptm.dim(); ++r) {
    for (Eigen::Index c = 0; c < ptm.dim(); ++c) flat.push_back(ptm(r, c));
  }
  return flat;
}

std::vector<int> targets_from_json(const json& j) {
  const json& field = require_field(j, "targets");
  if (!field.is_array() || field.empty()) {
    throw SchemaError("'targets' must be a non-empty array of qubit indices");
  }
  std::vector<int> targets;
  for (const auto& t : field) {
    if (!t.is_number_integer()) {
      throw SchemaError("'targets' entries must be integers");
    }
    targets.push_back(t.get<int>());
  }
  return targets;
}

}  // namespace

json instrument_to_json(const QuantumInstrument& instr) {
  json j;
  j["format_version"] = kFormatVersion;
  j["pauli_order"] = kPauliOrderToken;
  j["num_qubits"] = instr.num_qubits();
  json outcomes = json::array();
  for (const auto& outcome : instr.outcomes()) {
    json o;
    o["label"] = outcome.label;
    o["ptm"] = ptm_entries_to_json(outcome.ptm);
    outcomes.push_back(std::move(o));
  }
  j["outcomes"] = std::move(outcomes);
  return j;
}

QuantumInstrument instrument_from_json(const json& j) {
  check_header(j);
  const int num_qubits = require_int(j, "num_qubits");
  try {
    check_qubit_count(num_qubits);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
  const auto d2 = static_cast<Eigen::Index>(pauli_dim(num_qubits));

  const json& outcomes_field = require_field(j, "outcomes");
  if (!outcomes_field.is_array() || outcomes_field.empty()) {
    throw SchemaError("'outcomes' must be a non-empty array");
  }
  std::vector<OutcomeBranch> outcomes;
  for (const auto& o : outcomes_field) {
    const std::string label = require_string(o, "label");
    outcomes.push_back({label, Ptm(ptm_entries_from_json(
                                   require_field(o, "ptm"), d2,
                                   "outcome '" + label + "' ptm"))});
  }
  try {
    return QuantumInstrument(num_qubits, std::move(outcomes));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

QuantumInstrument load_instrument(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
  return instrument_from_json(j);
}

void save_instrument(const QuantumInstrument& instr,
                     const std::filesystem::path& path) {
  write_file(path, instrument_to_json(instr).dump(2) + "\n");
}

json circuit_to_json(const Circuit& circuit) {
  json j;
  j["format_version"] = kFormatVersion;
  j["pauli_order"] = kPauliOrderToken;
  j["num_qubits"] = circuit.num_qubits();
  json instructions = json::array();
  for (const auto& instruction : circuit.instructions()) {
    json op;
    if (const auto* ch = std::get_if<ChannelOp>(&instruction)) {
      op["op"] = "channel";
      op["targets"] = ch->targets;
      op["ptm"] = ptm_entries_to_json(ch->ptm);
    } else if (const auto* m = std::get_if<MeasureOp>(&instruction)) {
      op["op"] = "measure";
      op["targets"] = m->targets;
      op["register"] = m->register_name;
      op["instrument"] = instrument_to_json(m->instrument);
    } else {
      const auto& cond = std::get<ConditionalOp>(instruction);
      op["op"] = "conditional";
      op["targets"] = cond.targets;
      json when = json::array();
      for (const auto& c : cond.conditions) {
        when.push_back({{"register", c.register_name}, {"equals", c.equals}});
      }
      op["when"] = std::move(when);
      op["ptm"] = ptm_entries_to_json(cond.ptm);
    }
    instructions.push_back(std::move(op));
  }
  j["instructions"] = std::move(instructions);
  return j;
}

Circuit circuit_from_json(const json& j,
                          const std::filesystem::path& base_dir) {
  check_header(j);
  const int num_qubits = require_int(j, "num_qubits");
  try {
    check_qubit_count(num_qubits);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }

  const json& instructions_field = require_field(j, "instructions");
  if (!instructions_field.is_array()) {
    throw SchemaError("'instructions' must be an array");
  }
  std::vector<Instruction> instructions;
  for (const auto& op : instructions_field) {
    const std::string kind = require_string(op, "op");
    std::vector<int> targets = targets_from_json(op);
    const auto op_dim = static_cast<Eigen::Index>(
        pauli_dim(static_cast<int>(targets.size())));
    if (kind == "channel") {
      instructions.emplace_back(ChannelOp{
          Ptm(ptm_entries_from_json(require_field(op, "ptm"), op_dim,
                                    "channel ptm")),
          std::move(targets)});
    } else if (kind == "measure") {
      QuantumInstrument instrument = [&] {
        if (op.contains("instrument_path")) {
          const std::filesystem::path ref =
              base_dir / require_string(op, "instrument_path");
          return load_instrument(ref);
        }
        return instrument_from_json(require_field(op, "instrument"));
      }();
      instructions.emplace_back(MeasureOp{std::move(instrument),
                                          std::move(targets),
                                          require_string(op, "register")});
    } else if (kind == "conditional") {
      std::vector<RegisterCondition> conditions;
      const json& when = require_field(op, "when");
      if (!when.is_array()) {
        throw SchemaError("'when' must be an array of conditions");
      }
      for (const auto& c : when) {
        conditions.push_back(
            {require_string(c, "register"), require_string(c, "equals")});
      }
      instructions.emplace_back(ConditionalOp{
          Ptm(ptm_entries_from_json(require_field(op, "ptm"), op_dim,
                                    "conditional ptm")),
          std::move(targets), std::move(conditions)});
    } else {
      throw SchemaError("unknown instruction op '" + kind + "'");
    }
  }
  return Circuit(num_qubits, std::move(instructions));
}

Circuit load_circuit(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
  return circuit_from_json(j, path.parent_path());
}

void save_circuit(const Circuit& circuit, const std::filesystem::path& path) {
  write_file(path, circuit_to_json(circuit).dump(2) + "\n");
}

json validation_to_json(const ValidationReport& report) {
  json j;
  j["passed"] = report.passed;
  j["tolerance"] = report.tolerance;
  j["tp_residual"] = report.tp_residual;
  json branches = json::array();
  for (const auto& b : report.branches) {
    branches.push_back({{"label", b.label},
                        {"cp", b.cp},
                        {"cp_min_eigenvalue", b.cp_min_eigenvalue},
                        {"trace_nonincreasing", b.trace_nonincreasing},
                        {"trace_nonincreasing_min_eigenvalue",
                         b.trace_nonincreasing_min_eigenvalue}});
  }
  j["branches"] = std::move(branches);
  return j;
}

json report_to_json(const DiagnosticReport& report,
                    const std::string& digest) {
  json j;
  j["format_version"] = kFormatVersion;
  j["tool_version"] = kVersion;
  j["pauli_order"] = kPauliOrderToken;
  j["input_digest"] = digest;
  j["num_qubits"] = report.num_qubits;
  j["tolerance"] = report.tolerance;
  j["passed"] = report.passed;
  j["tp_residual"] = report.tp_residual;

  json branches = json::array();
  for (const auto& b : report.branches) {
    branches.push_back(
        {{"label", b.label},
         {"cp_min_eigenvalue", b.cp_min_eigenvalue},
         {"trace_nonincreasing", b.trace_nonincreasing},
         {"pauli_fidelities", vector_to_json(b.pauli_fidelities)},
         {"nonunital_column", vector_to_json(b.nonunital_column)},
         {"numerical_rank", b.numerical_rank}});
  }
  j["branches"] = std::move(branches);

  j["confusion_matrix"] = matrix_to_json(report.confusion);
  j["assignment_fidelity"] = report.assignment_fidelity;

  json effects = json::array();
  for (std::size_t i = 0; i < report.effects.size(); ++i) {
    effects.push_back(
        {{"label", report.effects[i].label},
         {"pauli_coeffs", vector_to_json(report.effects[i].pauli_coeffs)},
         {"axis_tilt_degrees",
          double_or_null(report.axis_tilt_degrees[i])}});
  }
  j["effects"] = std::move(effects);

  j["measure_and_prepare"] = report.measure_and_prepare;

  json qnd;
  for (std::size_t b = 0; b < report.qnd_repeatability.size(); ++b) {
    std::string label(static_cast<std::size_t>(report.num_qubits), '0');
    for (int q = 0; q < report.num_qubits; ++q) {
      if ((b >> (report.num_qubits - 1 - q)) & 1u) {
        label[static_cast<std::size_t>(q)] = '1';
      }
    }
    qnd[label] = report.qnd_repeatability[b];
  }
  j["qnd_repeatability"] = std::move(qnd);

  json post;
  for (std::size_t i = 0; i < report.post_mixed_states.size(); ++i) {
    const auto& label = report.branches[i].label;
    if (report.post_mixed_states[i].has_value()) {
      post[label] = vector_to_json(report.post_mixed_states[i]->coeffs());
    } else {
      post[label] = nullptr;
    }
  }
  j["post_mixed_states"] = std::move(post);
  return j;
}

std::string input_digest(std::string_view bytes) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001B3ULL;
  }
  std::ostringstream out;
  out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << hash;
  return out.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw SchemaError("cannot open '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path,
                std::string_view contents) {
  // Stage next to the destination and rename, so readers never see a
  // partial file.
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write '" + tmp.string() + "'");
    }
    out << contents;
    if (!out.good()) {
      throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace qikit
