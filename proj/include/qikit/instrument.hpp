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

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qikit/ptm.hpp"

namespace qikit {

/// Conditional branch probabilities below this floor are treated as zero:
/// the post-measurement state is undefined there (division by ~0).
inline constexpr double kProbabilityFloor = 1e-12;

struct OutcomeBranch {
  std::string label;
  Ptm ptm;
};

/// A quantum instrument: an ordered set of outcome-labeled CP branch maps
/// whose sum is trace-preserving. Construction checks structure only
/// (distinct labels, matching dimensions); the CPTP conditions are checked
/// by validate(), which reports rather than rejects.
class QuantumInstrument {
 public:
  QuantumInstrument(int num_qubits, std::vector<OutcomeBranch> outcomes);

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dim() const;  // 4^n
  std::size_t num_outcomes() const { return outcomes_.size(); }
  const OutcomeBranch& outcome(std::size_t i) const { return outcomes_[i]; }
  const std::vector<OutcomeBranch>& outcomes() const { return outcomes_; }

  /// Index of the outcome with the given label; throws if absent.
  std::size_t outcome_index(std::string_view label) const;

 private:
  int num_qubits_ = 0;
  std::vector<OutcomeBranch> outcomes_;
};

struct BranchValidation {
  std::string label;
  double cp_min_eigenvalue = 0.0;
  bool cp = false;
  double trace_nonincreasing_min_eigenvalue = 0.0;
  bool trace_nonincreasing = false;
};

struct ValidationReport {
  bool passed = false;
  double tolerance = 0.0;
  double tp_residual = 0.0;  // of the summed branches' top row
  std::vector<BranchValidation> branches;
};

/// POVM effect E_i = sum_j Lambda^(i)_0j P_j, read off a branch's top row.
struct PovmEffect {
  std::string label;
  Eigen::VectorXd pauli_coeffs;  // the top row
  Eigen::MatrixXcd matrix;
};

struct MeasurementAxis {
  Eigen::Vector3d axis;  // unit Bloch vector of the traceless part
  double tilt_degrees;   // angle from the nearer of the +Z / -Z axes
};

struct BranchReport {
  std::string label;
  double cp_min_eigenvalue = 0.0;
  bool trace_nonincreasing = false;
  Eigen::VectorXd pauli_fidelities;
  Eigen::VectorXd nonunital_column;
  int numerical_rank = 0;
};

/// The full diagnostic read-out of one instrument. Every field is a pure
/// function of the instrument (and the tolerance).
struct DiagnosticReport {
  int num_qubits = 0;
  double tolerance = 0.0;
  bool passed = false;
  double tp_residual = 0.0;
  std::vector<BranchReport> branches;
  Eigen::MatrixXd confusion;  // rows: outcomes, columns: basis states
  double assignment_fidelity = 0.0;
  std::vector<PovmEffect> effects;
  /// Per effect; NaN when the axis is undefined (multi-qubit instruments or
  /// effects with no traceless part).
  std::vector<double> axis_tilt_degrees;
  bool measure_and_prepare = false;
  std::vector<double> qnd_repeatability;  // per computational basis state
  /// Post-measurement state from the maximally mixed input, per outcome;
  /// empty when the branch probability is below the floor.
  std::vector<std::optional<PauliVector>> post_mixed_states;
};

struct AppliedOutcome {
  std::string label;
  double probability = 0.0;
  PauliVector state;  // normalized
};

/// CP / trace-nonincreasing check per branch plus the TP check on the sum,
/// all at the given tolerance.
ValidationReport validate(const QuantumInstrument& instr, double tol = 1e-6);

/// p_i = (top row of branch i) . v. Requires a normalized input (v_I = 1).
std::vector<double> outcome_probabilities(const QuantumInstrument& instr,
                                          const PauliVector& v);

/// Lambda^(i) v / p_i. Throws std::domain_error when p_i is below the floor.
PauliVector post_measurement_state(const QuantumInstrument& instr,
                                   std::string_view outcome,
                                   const PauliVector& v);

/// One entry per outcome with probability above the floor.
std::vector<AppliedOutcome> apply(const QuantumInstrument& instr,
                                  const PauliVector& v);

/// The channel obtained by discarding the classical outcome: sum of the
/// branch PTMs. TP for every valid instrument.
Ptm discard(const QuantumInstrument& instr);

/// Sequential composition: outcome (i, j) carries branch
/// Lambda_second^(j) Lambda_first^(i) under the label "<first>,<second>".
QuantumInstrument compose(const QuantumInstrument& second,
                          const QuantumInstrument& first);

/// Entry (k, b): probability of outcome k when computational basis state b
/// is prepared. Columns sum to 1 for valid instruments.
Eigen::MatrixXd confusion_matrix(const QuantumInstrument& instr);

/// Mean of the diagonal entries.
double assignment_fidelity(const Eigen::MatrixXd& confusion);

/// One effect per outcome; they resolve the identity for valid instruments
/// and reproduce outcome_probabilities through the Born rule.
std::vector<PovmEffect> povm_effects(const QuantumInstrument& instr);

/// Bloch axis of a single-qubit effect and its tilt from the Z axis.
/// Throws std::domain_error when the traceless part vanishes and
/// std::invalid_argument for multi-qubit effects.
MeasurementAxis measurement_axis(const PovmEffect& effect);

/// True iff every branch has numerical rank 1 (the post-measurement state
/// is fully determined by the classical outcome).
bool is_measure_and_prepare(const QuantumInstrument& instr, double tol = 1e-6);

/// Probability that two back-to-back applications give the same outcome:
/// sum_i (top row of Lambda^(i)) . (Lambda^(i) v). 1 for ideal projective
/// instruments on any input.
double qnd_repeatability(const QuantumInstrument& instr, const PauliVector& v);

/// The ideal computational-basis instrument: 2^n outcomes labeled with bit
/// strings (qubit 0 leftmost), branch b built from the single Kraus
/// operator |b><b|.
QuantumInstrument ideal_projective_instrument(int num_qubits);

/// branch_i -> post_i * Lambda^(i) * pre. Outcomes absent from the map keep
/// an identity post map. Both wrappers must be TP so the result stays a
/// valid instrument.
QuantumInstrument wrap(const QuantumInstrument& instr, const Ptm& pre,
                       const std::map<std::string, Ptm>& post_by_outcome);

/// Same post-measurement map for every outcome.
QuantumInstrument wrap(const QuantumInstrument& instr, const Ptm& pre,
                       const Ptm& post);

/// Runs the whole diagnostic pipeline at the given validation tolerance.
DiagnosticReport diagnose(const QuantumInstrument& instr, double tol = 1e-6);

}  // namespace qikit
