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

#include "qikit/instrument.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <utility>

namespace qikit {

namespace {

constexpr double kNormalizationTol = 1e-6;
constexpr double kWrapperTpTol = 1e-9;

void check_normalized(const PauliVector& v) {
  if (std::abs(v.trace() - 1.0) > kNormalizationTol) {
    throw std::invalid_argument(
        "input state is not normalized (identity component " +
        std::to_string(v.trace()) + ")");
  }
}

void check_dim(const QuantumInstrument& instr, const PauliVector& v) {
  if (instr.dim() != v.dim()) {
    throw std::invalid_argument("instrument / state dimension mismatch");
  }
}

std::string bit_label(std::uint64_t bits, int num_qubits) {
  std::string label(static_cast<std::size_t>(num_qubits), '0');
  for (int q = 0; q < num_qubits; ++q) {
    if ((bits >> (num_qubits - 1 - q)) & 1u) {
      label[static_cast<std::size_t>(q)] = '1';
    }
  }
  return label;
}

}  // namespace

QuantumInstrument::QuantumInstrument(int num_qubits,
                                     std::vector<OutcomeBranch> outcomes)
    : num_qubits_(num_qubits), outcomes_(std::move(outcomes)) {
  if (num_qubits_ < 1) {
    throw std::invalid_argument("instrument needs at least one qubit");
  }
  if (outcomes_.empty()) {
    throw std::invalid_argument("instrument needs at least one outcome");
  }
  const auto d2 = static_cast<Eigen::Index>(pauli_dim(num_qubits_));
  std::set<std::string> labels;
  for (const auto& outcome : outcomes_) {
    if (outcome.ptm.dim() != d2) {
      throw std::invalid_argument("branch '" + outcome.label +
                                  "' has mismatched dimension");
    }
    if (!labels.insert(outcome.label).second) {
      throw std::invalid_argument("duplicate outcome label '" +
                                  outcome.label + "'");
    }
  }
}

Eigen::Index QuantumInstrument::dim() const {
  return static_cast<Eigen::Index>(pauli_dim(num_qubits_));
}

std::size_t QuantumInstrument::outcome_index(std::string_view label) const {
  for (std::size_t i = 0; i < outcomes_.size(); ++i) {
    if (outcomes_[i].label == label) return i;
  }
  throw std::invalid_argument("unknown outcome label '" + std::string(label) +
                              "'");
}

ValidationReport validate(const QuantumInstrument& instr, double tol) {
  ValidationReport report;
  report.tolerance = tol;
  report.passed = true;

  Eigen::VectorXd top_row_sum = Eigen::VectorXd::Zero(instr.dim());
  for (const auto& outcome : instr.outcomes()) {
    BranchValidation bv;
    bv.label = outcome.label;
    const CpReport cp = is_cp(outcome.ptm, tol);
    bv.cp = cp.cp;
    bv.cp_min_eigenvalue = cp.min_choi_eigenvalue;
    const TraceNonincreasingReport tni =
        is_trace_nonincreasing(outcome.ptm, tol);
    bv.trace_nonincreasing = tni.nonincreasing;
    bv.trace_nonincreasing_min_eigenvalue = tni.min_eigenvalue;
    report.passed = report.passed && bv.cp && bv.trace_nonincreasing;
    report.branches.push_back(std::move(bv));
    top_row_sum += outcome.ptm.matrix().row(0).transpose();
  }

  Eigen::VectorXd target = Eigen::VectorXd::Zero(instr.dim());
  target(0) = 1.0;
  report.tp_residual = (top_row_sum - target).cwiseAbs().maxCoeff();
  report.passed = report.passed && report.tp_residual <= tol;
  return report;
}

std::vector<double> outcome_probabilities(const QuantumInstrument& instr,
                                          const PauliVector& v) {
  check_dim(instr, v);
  check_normalized(v);
  std::vector<double> probs;
  probs.reserve(instr.num_outcomes());
  for (const auto& outcome : instr.outcomes()) {
    probs.push_back(outcome.ptm.matrix().row(0).dot(v.coeffs()));
  }
  return probs;
}

PauliVector post_measurement_state(const QuantumInstrument& instr,
                                   std::string_view outcome,
                                   const PauliVector& v) {
  check_dim(instr, v);
  const auto& branch = instr.outcome(instr.outcome_index(outcome));
  const double p = branch.ptm.matrix().row(0).dot(v.coeffs());
  if (p <= kProbabilityFloor) {
    throw std::domain_error("conditional state undefined: outcome '" +
                            std::string(outcome) + "' has probability " +
                            std::to_string(p));
  }
  return PauliVector(branch.ptm.matrix() * v.coeffs() / p);
}

std::vector<AppliedOutcome> apply(const QuantumInstrument& instr,
                                  const PauliVector& v) {
  check_dim(instr, v);
  check_normalized(v);
  std::vector<AppliedOutcome> result;
  for (const auto& outcome : instr.outcomes()) {
    const double p = outcome.ptm.matrix().row(0).dot(v.coeffs());
    if (p <= kProbabilityFloor) continue;
    result.push_back(
        {outcome.label, p, PauliVector(outcome.ptm.matrix() * v.coeffs() / p)});
  }
  return result;
}

Ptm discard(const QuantumInstrument& instr) {
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(instr.dim(), instr.dim());
  for (const auto& outcome : instr.outcomes()) sum += outcome.ptm.matrix();
  return Ptm(std::move(sum));
}

QuantumInstrument compose(const QuantumInstrument& second,
                          const QuantumInstrument& first) {
  if (first.dim() != second.dim()) {
    throw std::invalid_argument("instrument dimension mismatch");
  }
  std::vector<OutcomeBranch> outcomes;
  outcomes.reserve(first.num_outcomes() * second.num_outcomes());
  for (const auto& a : first.outcomes()) {
    for (const auto& b : second.outcomes()) {
      outcomes.push_back(
          {a.label + "," + b.label, compose(b.ptm, a.ptm)});
    }
  }
  return QuantumInstrument(first.num_qubits(), std::move(outcomes));
}

Eigen::MatrixXd confusion_matrix(const QuantumInstrument& instr) {
  const int n = instr.num_qubits();
  const auto num_basis = std::uint64_t{1} << n;
  Eigen::MatrixXd confusion(static_cast<Eigen::Index>(instr.num_outcomes()),
                            static_cast<Eigen::Index>(num_basis));
  for (std::uint64_t b = 0; b < num_basis; ++b) {
    const PauliVector v = PauliVector::basis_state(n, b);
    for (std::size_t k = 0; k < instr.num_outcomes(); ++k) {
      confusion(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(b)) =
          instr.outcome(k).ptm.matrix().row(0).dot(v.coeffs());
    }
  }
  return confusion;
}

double assignment_fidelity(const Eigen::MatrixXd& confusion) {
  const Eigen::Index k = std::min(confusion.rows(), confusion.cols());
  if (k == 0) {
    throw std::invalid_argument("empty confusion matrix");
  }
  return confusion.topLeftCorner(k, k).diagonal().mean();
}

std::vector<PovmEffect> povm_effects(const QuantumInstrument& instr) {
  const auto d = static_cast<double>(Eigen::Index{1} << instr.num_qubits());
  std::vector<PovmEffect> effects;
  effects.reserve(instr.num_outcomes());
  for (const auto& outcome : instr.outcomes()) {
    PovmEffect effect;
    effect.label = outcome.label;
    effect.pauli_coeffs = outcome.ptm.matrix().row(0).transpose();
    // E_i = sum_j Lambda^(i)_0j P_j; devectorize carries a 1/d.
    effect.matrix = d * devectorize(PauliVector(effect.pauli_coeffs));
    effects.push_back(std::move(effect));
  }
  return effects;
}

MeasurementAxis measurement_axis(const PovmEffect& effect) {
  if (effect.pauli_coeffs.size() != 4) {
    throw std::invalid_argument(
        "measurement axis is defined for single-qubit effects only");
  }
  const Eigen::Vector3d traceless = effect.pauli_coeffs.tail<3>();
  const double norm = traceless.norm();
  if (norm < 1e-12) {
    throw std::domain_error(
        "effect has no traceless part; measurement axis undefined");
  }
  MeasurementAxis result;
  result.axis = traceless / norm;
  const double transverse = std::hypot(traceless(0), traceless(1));
  result.tilt_degrees =
      std::atan2(transverse, std::abs(traceless(2))) * 180.0 / M_PI;
  return result;
}

bool is_measure_and_prepare(const QuantumInstrument& instr, double tol) {
  for (const auto& outcome : instr.outcomes()) {
    if (numerical_rank(outcome.ptm, tol) != 1) return false;
  }
  return true;
}

double qnd_repeatability(const QuantumInstrument& instr,
                         const PauliVector& v) {
  check_dim(instr, v);
  check_normalized(v);
  double repeat = 0.0;
  for (const auto& outcome : instr.outcomes()) {
    repeat += outcome.ptm.matrix().row(0).dot(outcome.ptm.matrix() *
                                              v.coeffs());
  }
  return repeat;
}

QuantumInstrument ideal_projective_instrument(int num_qubits) {
  check_qubit_count(num_qubits);
  const auto d = std::uint64_t{1} << num_qubits;
  std::vector<OutcomeBranch> outcomes;
  outcomes.reserve(d);
  for (std::uint64_t b = 0; b < d; ++b) {
    // The branch with Kraus operator |b><b| has the rank-1 PTM
    // (1/d) u u^T with u the Pauli expansion of |b><b|.
    const Eigen::VectorXd u = PauliVector::basis_state(num_qubits, b).coeffs();
    Eigen::MatrixXd branch = (u * u.transpose()) / static_cast<double>(d);
    outcomes.push_back({bit_label(b, num_qubits), Ptm(std::move(branch))});
  }
  return QuantumInstrument(num_qubits, std::move(outcomes));
}

QuantumInstrument wrap(const QuantumInstrument& instr, const Ptm& pre,
                       const std::map<std::string, Ptm>& post_by_outcome) {
  if (pre.dim() != instr.dim()) {
    throw std::invalid_argument("pre map dimension mismatch");
  }
  if (!is_tp(pre, kWrapperTpTol).tp) {
    throw std::invalid_argument("pre map must be trace-preserving");
  }
  for (const auto& [label, post] : post_by_outcome) {
    instr.outcome_index(label);  // throws on unknown labels
    if (post.dim() != instr.dim()) {
      throw std::invalid_argument("post map dimension mismatch for outcome '" +
                                  label + "'");
    }
    if (!is_tp(post, kWrapperTpTol).tp) {
      throw std::invalid_argument(
          "post map for outcome '" + label + "' must be trace-preserving");
    }
  }
  std::vector<OutcomeBranch> outcomes;
  outcomes.reserve(instr.num_outcomes());
  for (const auto& outcome : instr.outcomes()) {
    Eigen::MatrixXd branch = outcome.ptm.matrix() * pre.matrix();
    if (auto it = post_by_outcome.find(outcome.label);
        it != post_by_outcome.end()) {
      branch = it->second.matrix() * branch;
    }
    outcomes.push_back({outcome.label, Ptm(std::move(branch))});
  }
  return QuantumInstrument(instr.num_qubits(), std::move(outcomes));
}

QuantumInstrument wrap(const QuantumInstrument& instr, const Ptm& pre,
                       const Ptm& post) {
  std::map<std::string, Ptm> post_by_outcome;
  for (const auto& outcome : instr.outcomes()) {
    post_by_outcome.emplace(outcome.label, post);
  }
  return wrap(instr, pre, post_by_outcome);
}

DiagnosticReport diagnose(const QuantumInstrument& instr, double tol) {
  DiagnosticReport report;
  report.num_qubits = instr.num_qubits();
  report.tolerance = tol;

  const ValidationReport validation = validate(instr, tol);
  report.passed = validation.passed;
  report.tp_residual = validation.tp_residual;

  for (std::size_t i = 0; i < instr.num_outcomes(); ++i) {
    const auto& outcome = instr.outcome(i);
    BranchReport br;
    br.label = outcome.label;
    br.cp_min_eigenvalue = validation.branches[i].cp_min_eigenvalue;
    br.trace_nonincreasing = validation.branches[i].trace_nonincreasing;
    br.pauli_fidelities = pauli_fidelities(outcome.ptm);
    br.nonunital_column = outcome.ptm.matrix().col(0);
    br.numerical_rank = numerical_rank(outcome.ptm);
    report.branches.push_back(std::move(br));
  }

  report.confusion = confusion_matrix(instr);
  report.assignment_fidelity = assignment_fidelity(report.confusion);
  report.effects = povm_effects(instr);

  for (const auto& effect : report.effects) {
    double tilt = std::numeric_limits<double>::quiet_NaN();
    if (instr.num_qubits() == 1) {
      try {
        tilt = measurement_axis(effect).tilt_degrees;
      } catch (const std::domain_error&) {
        // pure-identity effect: leave NaN
      }
    }
    report.axis_tilt_degrees.push_back(tilt);
  }

  report.measure_and_prepare = is_measure_and_prepare(instr);

  const auto num_basis = std::uint64_t{1} << instr.num_qubits();
  for (std::uint64_t b = 0; b < num_basis; ++b) {
    report.qnd_repeatability.push_back(qnd_repeatability(
        instr, PauliVector::basis_state(instr.num_qubits(), b)));
  }

  const PauliVector mixed = PauliVector::maximally_mixed(instr.num_qubits());
  for (const auto& outcome : instr.outcomes()) {
    const double p = outcome.ptm.matrix().row(0).dot(mixed.coeffs());
    if (p > kProbabilityFloor) {
      report.post_mixed_states.emplace_back(
          PauliVector(outcome.ptm.matrix() * mixed.coeffs() / p));
    } else {
      report.post_mixed_states.emplace_back(std::nullopt);
    }
  }
  return report;
}

}  // namespace qikit
