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

// Command-line surface: validate, diagnose, apply, compose, simulate,
// synth, render. Exit codes: 0 success, 1 semantic failure (validation,
// bad parameters), 2 parse/schema failure.

#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qikit/channels.hpp"
#include "qikit/circuit.hpp"
#include "qikit/instrument.hpp"
#include "qikit/io.hpp"
#include "qikit/render.hpp"
#include "qikit/version.hpp"

namespace {

using namespace qikit;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string fmt_vector(const Eigen::VectorXd& v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt(v(i));
  }
  return out + ")";
}

std::string fmt_record(const OutcomeRecord& record) {
  if (record.empty()) return "(none)";
  std::string out;
  for (const auto& [reg, value] : record) {
    if (!out.empty()) out += ",";
    out += reg + "=" + value;
  }
  return out;
}

PauliVector parse_state(const std::string& spec, int num_qubits) {
  const auto d2 = static_cast<Eigen::Index>(pauli_dim(num_qubits));
  if (spec == "mixed") return PauliVector::maximally_mixed(num_qubits);
  if (num_qubits == 1) {
    if (spec == "+") return PauliVector{1, 1, 0, 0};
    if (spec == "-") return PauliVector{1, -1, 0, 0};
    if (spec == "i") return PauliVector{1, 0, 1, 0};
    if (spec == "-i") return PauliVector{1, 0, -1, 0};
  }
  if (static_cast<int>(spec.size()) == num_qubits &&
      spec.find_first_not_of("01") == std::string::npos) {
    return PauliVector::basis_state(num_qubits, std::stoull(spec, nullptr, 2));
  }
  if (spec.find(',') != std::string::npos) {
    std::vector<double> values;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t pos = 0;
      values.push_back(std::stod(item, &pos));
    }
    if (static_cast<Eigen::Index>(values.size()) != d2) {
      throw std::invalid_argument("explicit state needs " +
                                  std::to_string(d2) + " components");
    }
    return PauliVector(Eigen::Map<const Eigen::VectorXd>(
        values.data(), static_cast<Eigen::Index>(values.size())));
  }
  throw std::invalid_argument("unknown state token '" + spec + "'");
}

void print_validation(const ValidationReport& report) {
  std::cout << "TP residual: " << fmt(report.tp_residual) << " (tolerance "
            << fmt(report.tolerance) << ")\n";
  for (const auto& b : report.branches) {
    std::cout << "branch \"" << b.label
              << "\": CP min eigenvalue " << fmt(b.cp_min_eigenvalue)
              << (b.cp ? "" : " [violation]") << ", trace-nonincreasing "
              << (b.trace_nonincreasing ? "yes" : "no") << "\n";
  }
  std::cout << (report.passed ? "PASS" : "FAIL") << "\n";
}

void print_report(const DiagnosticReport& report) {
  std::cout << "validation: " << (report.passed ? "PASS" : "FAIL")
            << " (TP residual " << fmt(report.tp_residual) << ", tolerance "
            << fmt(report.tolerance) << ")\n";
  for (const auto& b : report.branches) {
    std::cout << "branch \"" << b.label << "\": CP min eigenvalue "
              << fmt(b.cp_min_eigenvalue) << ", trace-nonincreasing "
              << (b.trace_nonincreasing ? "yes" : "no") << ", rank "
              << b.numerical_rank << "\n"
              << "  pauli fidelities " << fmt_vector(b.pauli_fidelities)
              << "\n"
              << "  nonunital column " << fmt_vector(b.nonunital_column)
              << "\n";
  }
  std::cout << "confusion matrix (rows outcomes, columns basis states):\n";
  for (Eigen::Index r = 0; r < report.confusion.rows(); ++r) {
    std::cout << "  " << fmt_vector(report.confusion.row(r).transpose())
              << "\n";
  }
  std::cout << "assignment fidelity: " << fmt(report.assignment_fidelity)
            << "\n";
  for (std::size_t i = 0; i < report.effects.size(); ++i) {
    std::cout << "effect \"" << report.effects[i].label << "\": "
              << fmt_vector(report.effects[i].pauli_coeffs);
    if (!std::isnan(report.axis_tilt_degrees[i])) {
      std::cout << "  axis tilt " << fmt(report.axis_tilt_degrees[i])
                << " deg";
    }
    std::cout << "\n";
  }
  std::cout << "measure-and-prepare: "
            << (report.measure_and_prepare ? "yes" : "no") << "\n";
  std::cout << "QND repeatability per basis state:";
  for (double q : report.qnd_repeatability) std::cout << " " << fmt(q);
  std::cout << "\n";
  std::cout << "post-measurement states from the maximally mixed input:\n";
  for (std::size_t i = 0; i < report.post_mixed_states.size(); ++i) {
    std::cout << "  \"" << report.branches[i].label << "\": ";
    if (report.post_mixed_states[i].has_value()) {
      std::cout << fmt_vector(report.post_mixed_states[i]->coeffs());
    } else {
      std::cout << "(branch probability below floor)";
    }
    std::cout << "\n";
  }
}

int cmd_validate(const std::string& path, double tol, bool as_json) {
  const QuantumInstrument instr = load_instrument(path);
  const ValidationReport report = validate(instr, tol);
  if (as_json) {
    std::cout << validation_to_json(report).dump(2) << "\n";
  } else {
    std::cout << "instrument: " << instr.num_qubits() << " qubit(s), "
              << instr.num_outcomes() << " outcome(s)\n";
    print_validation(report);
  }
  return report.passed ? 0 : 1;
}

int cmd_diagnose(const std::string& path, double tol, bool force,
                 bool as_json, const std::string& out_path) {
  const std::string bytes = read_file(path);
  const QuantumInstrument instr = load_instrument(path);
  const ValidationReport validation = validate(instr, tol);
  if (!validation.passed && !force) {
    std::cerr << "error: instrument fails validation at tolerance "
              << fmt(tol) << " (use --force to diagnose anyway)\n";
    print_validation(validation);
    return 1;
  }
  const DiagnosticReport report = diagnose(instr, tol);
  const json report_json = report_to_json(report, input_digest(bytes));
  if (!out_path.empty()) {
    write_file(out_path, report_json.dump(2) + "\n");
  }
  if (as_json) {
    std::cout << report_json.dump(2) << "\n";
  } else {
    print_report(report);
  }
  return 0;
}

int cmd_apply(const std::string& path, const std::string& state_spec,
              bool as_json) {
  const QuantumInstrument instr = load_instrument(path);
  const PauliVector v = parse_state(state_spec, instr.num_qubits());
  const std::vector<double> probs = outcome_probabilities(instr, v);
  if (as_json) {
    json j;
    j["state"] = std::vector<double>(v.coeffs().begin(), v.coeffs().end());
    json outcomes = json::array();
    for (std::size_t i = 0; i < probs.size(); ++i) {
      json o;
      o["label"] = instr.outcome(i).label;
      o["probability"] = probs[i];
      if (probs[i] > kProbabilityFloor) {
        const PauliVector post =
            post_measurement_state(instr, instr.outcome(i).label, v);
        o["post_state"] =
            std::vector<double>(post.coeffs().begin(), post.coeffs().end());
      } else {
        o["post_state"] = nullptr;
      }
      outcomes.push_back(std::move(o));
    }
    j["outcomes"] = std::move(outcomes);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "input state: " << fmt_vector(v.coeffs()) << "\n";
  for (std::size_t i = 0; i < probs.size(); ++i) {
    std::cout << "outcome \"" << instr.outcome(i).label
              << "\": p = " << fmt(probs[i]);
    if (probs[i] > kProbabilityFloor) {
      const PauliVector post =
          post_measurement_state(instr, instr.outcome(i).label, v);
      std::cout << ", post state " << fmt_vector(post.coeffs());
    }
    std::cout << "\n";
  }
  return 0;
}

int cmd_compose(const std::string& first_path, const std::string& second_path,
                const std::string& out_path) {
  const QuantumInstrument first = load_instrument(first_path);
  const QuantumInstrument second = load_instrument(second_path);
  const QuantumInstrument composed = compose(second, first);
  save_instrument(composed, out_path);
  std::cout << "wrote " << composed.num_outcomes() << " outcomes to "
            << out_path << "\n";
  return 0;
}

int cmd_simulate(const std::string& path, const std::string& mode,
                 std::size_t shots, std::uint64_t seed,
                 const std::string& state_spec, double p_min) {
  const Circuit circuit = load_circuit(path);
  const PauliVector v0 = parse_state(state_spec, circuit.num_qubits());
  if (mode == "exact") {
    const ExactResult result = run_exact(circuit, v0, p_min);
    std::cout << "branches: " << result.branches.size()
              << ", pruned mass: " << fmt(result.pruned_mass) << "\n";
    for (const auto& branch : result.branches) {
      std::cout << "  " << fmt_record(branch.outcome_record)
                << ": p = " << fmt(branch.probability) << ", state "
                << fmt_vector(branch.state.coeffs()) << "\n";
    }
    std::cout << "joint distribution:\n";
    const auto joint =
        marginal_distribution(result.branches, circuit.register_names());
    for (const auto& [key, p] : joint) {
      std::string label;
      for (std::size_t i = 0; i < key.size(); ++i) {
        if (i) label += ",";
        label += circuit.register_names()[i] + "=" + key[i];
      }
      std::cout << "  " << (label.empty() ? "(none)" : label) << ": "
                << fmt(p) << "\n";
    }
    for (const auto& reg : circuit.register_names()) {
      std::cout << "marginal " << reg << ":";
      for (const auto& [key, p] :
           marginal_distribution(result.branches, {reg})) {
        std::cout << " " << key[0] << " -> " << fmt(p);
      }
      std::cout << "\n";
    }
    return 0;
  }
  if (mode == "sample") {
    const std::vector<ShotRecord> records =
        run_sampled(circuit, v0, shots, seed);
    std::map<OutcomeRecord, std::size_t> counts;
    for (const auto& record : records) ++counts[record.outcome_record];
    std::cout << "shots: " << shots << ", seed: " << seed << "\n";
    for (const auto& [record, count] : counts) {
      std::cout << "  " << fmt_record(record) << ": " << count << "\n";
    }
    return 0;
  }
  throw std::invalid_argument("mode must be 'exact' or 'sample'");
}

int cmd_synth(const std::string& kind, double rate, double angle,
              int num_qubits, const std::string& out_path) {
  const QuantumInstrument ideal = ideal_projective_instrument(num_qubits);
  auto embed_1q = [&](const Ptm& p) {
    // Apply the same single-qubit wrapper to every qubit.
    Ptm full = Ptm::identity(num_qubits);
    for (int q = 0; q < num_qubits; ++q) {
      full = compose(embed(p, {q}, num_qubits), full);
    }
    return full;
  };

  QuantumInstrument result = [&] {
    if (kind == "ideal") {
      return ideal;
    }
    if (kind == "damped") {
      return wrap(ideal, Ptm::identity(num_qubits),
                  embed_1q(channels::amplitude_damping_ptm(rate)));
    }
    if (kind == "bitflip") {
      return wrap(ideal, embed_1q(channels::bit_flip_ptm(rate)),
                  Ptm::identity(num_qubits));
    }
    if (kind == "rotated") {
      return wrap(ideal, embed_1q(channels::rotation_ptm('y', angle)),
                  Ptm::identity(num_qubits));
    }
    if (kind == "dephased") {
      // Finite-strength measurement: residual coherence survives in every
      // branch. rate = 0 reproduces the ideal instrument, rate = 1 reveals
      // nothing. Only the single-qubit version is defined.
      if (num_qubits != 1) {
        throw std::invalid_argument(
            "--kind dephased supports one qubit only");
      }
      if (!(rate >= 0.0 && rate <= 1.0)) {
        throw std::invalid_argument("--rate must lie in [0, 1]");
      }
      const double theta = rate * M_PI / 4.0;
      Eigen::Matrix2cd m0 = Eigen::Matrix2cd::Zero();
      m0(0, 0) = std::cos(theta);
      m0(1, 1) = std::sin(theta);
      Eigen::Matrix2cd m1 = Eigen::Matrix2cd::Zero();
      m1(0, 0) = std::sin(theta);
      m1(1, 1) = std::cos(theta);
      return QuantumInstrument(
          1, {{"0", ptm_from_kraus({m0})}, {"1", ptm_from_kraus({m1})}});
    }
    throw std::invalid_argument("unknown --kind '" + kind + "'");
  }();

  const ValidationReport report = validate(result);
  if (!report.passed) {
    throw std::runtime_error("synthesized instrument fails validation");
  }
  save_instrument(result, out_path);
  std::cout << "wrote " << kind << " instrument (" << num_qubits
            << " qubit(s)) to " << out_path << "\n";
  return 0;
}

int cmd_render(const std::string& path, const std::string& out_path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
  std::string svg;
  if (j.contains("outcomes")) {
    svg = render_instrument_svg(instrument_from_json(j));
  } else if (j.contains("ptm")) {
    // Single-PTM file: header plus one flat matrix.
    if (!j.contains("format_version") || !j.contains("num_qubits")) {
      throw SchemaError("single-PTM file needs format_version/num_qubits");
    }
    const int n = j.at("num_qubits").get<int>();
    const auto d2 = static_cast<Eigen::Index>(pauli_dim(n));
    const auto& flat = j.at("ptm");
    if (!flat.is_array() || flat.size() != static_cast<std::size_t>(d2 * d2)) {
      throw SchemaError("'ptm' must hold " + std::to_string(d2 * d2) +
                        " numbers");
    }
    Eigen::MatrixXd m(d2, d2);
    std::size_t idx = 0;
    for (Eigen::Index r = 0; r < d2; ++r) {
      for (Eigen::Index c = 0; c < d2; ++c, ++idx) {
        m(r, c) = flat.at(idx).get<double>();
      }
    }
    svg = render_ptm_svg(Ptm(std::move(m)), "ptm");
  } else {
    throw SchemaError("expected an instrument file or a single-PTM file");
  }
  write_file(out_path, svg);
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-instrument toolkit: validation, diagnostics and "
               "simulation of mid-circuit measurements"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string path, second_path, out_path, state_spec = "mixed";
  std::string mode = "exact", kind;
  double tol = 1e-6, rate = 0.0, angle = 0.0, p_min = kProbabilityFloor;
  std::size_t shots = 1024;
  std::uint64_t seed = 0;
  int num_qubits = 1;
  bool as_json = false, force = false;

  auto* validate_cmd = app.add_subcommand("validate",
                                          "Check the CPTP structure of an "
                                          "instrument file");
  validate_cmd->add_option("path", path, "instrument file")->required();
  validate_cmd->add_option("--tol", tol, "validation tolerance");
  validate_cmd->add_flag("--json", as_json, "emit a JSON report");

  auto* diagnose_cmd = app.add_subcommand("diagnose",
                                          "Run the full diagnostic pipeline "
                                          "on an instrument file");
  diagnose_cmd->add_option("path", path, "instrument file")->required();
  diagnose_cmd->add_option("--tol", tol, "validation tolerance");
  diagnose_cmd->add_flag("--force", force,
                         "diagnose even if validation fails");
  diagnose_cmd->add_flag("--json", as_json, "emit the JSON report");
  diagnose_cmd->add_option("--out", out_path, "write the JSON report here");

  auto* apply_cmd = app.add_subcommand("apply",
                                       "Apply an instrument to a state and "
                                       "print the outcome table");
  apply_cmd->add_option("path", path, "instrument file")->required();
  apply_cmd
      ->add_option("--state", state_spec,
                   "named state (0, 1, +, -, i, -i, mixed, bit string) or "
                   "comma-separated Pauli components")
      ->required();
  apply_cmd->add_flag("--json", as_json, "emit JSON");

  auto* compose_cmd = app.add_subcommand("compose",
                                         "Compose two instruments "
                                         "(arguments in time order)");
  compose_cmd->add_option("first", path, "instrument applied first")
      ->required();
  compose_cmd->add_option("second", second_path, "instrument applied second")
      ->required();
  compose_cmd->add_option("--out", out_path, "output file")->required();

  auto* simulate_cmd = app.add_subcommand("simulate",
                                          "Run a circuit file exactly or "
                                          "with sampled shots");
  simulate_cmd->add_option("path", path, "circuit file")->required();
  simulate_cmd->add_option("--mode", mode, "exact or sample")
      ->check(CLI::IsMember({"exact", "sample"}));
  simulate_cmd->add_option("--shots", shots, "shot count for sample mode");
  simulate_cmd->add_option("--seed", seed, "RNG seed for sample mode");
  simulate_cmd->add_option("--state", state_spec,
                           "initial state (default mixed)");
  simulate_cmd->add_option("--p-min", p_min,
                           "branch pruning threshold for exact mode");

  auto* synth_cmd = app.add_subcommand("synth",
                                       "Write a synthetic instrument "
                                       "fixture");
  synth_cmd
      ->add_option("--kind", kind, "ideal, damped, dephased, rotated, bitflip")
      ->required()
      ->check(CLI::IsMember({"ideal", "damped", "dephased", "rotated",
                             "bitflip"}));
  synth_cmd->add_option("--rate", rate,
                        "noise rate in [0, 1] (damped, dephased, bitflip)");
  synth_cmd->add_option("--angle", angle, "rotation angle in radians");
  synth_cmd->add_option("--qubits", num_qubits, "qubit count");
  synth_cmd->add_option("--out", out_path, "output file")->required();

  auto* render_cmd = app.add_subcommand("render",
                                        "Render PTM heatmaps to an SVG "
                                        "file");
  render_cmd->add_option("path", path, "instrument or single-PTM file")
      ->required();
  render_cmd->add_option("--out", out_path, "output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(validate_cmd)) {
      return cmd_validate(path, tol, as_json);
    }
    if (app.got_subcommand(diagnose_cmd)) {
      return cmd_diagnose(path, tol, force, as_json, out_path);
    }
    if (app.got_subcommand(apply_cmd)) {
      return cmd_apply(path, state_spec, as_json);
    }
    if (app.got_subcommand(compose_cmd)) {
      return cmd_compose(path, second_path, out_path);
    }
    if (app.got_subcommand(simulate_cmd)) {
      return cmd_simulate(path, mode, shots, seed, state_spec, p_min);
    }
    if (app.got_subcommand(synth_cmd)) {
      return cmd_synth(kind, rate, angle, num_qubits, out_path);
    }
    if (app.got_subcommand(render_cmd)) {
      return cmd_render(path, out_path);
    }
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
