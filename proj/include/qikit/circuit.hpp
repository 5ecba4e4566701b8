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

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "qikit/instrument.hpp"
#include "qikit/ptm.hpp"

namespace qikit {

/// Unconditional TP channel on the listed qubits.
struct ChannelOp {
  Ptm ptm;
  std::vector<int> targets;
};

/// Mid-circuit measurement writing its outcome label to a fresh classical
/// register.
struct MeasureOp {
  QuantumInstrument instrument;
  std::vector<int> targets;
  std::string register_name;
};

struct RegisterCondition {
  std::string register_name;
  std::string equals;
};

/// TP channel applied only on branches whose classical record satisfies
/// every condition (a conjunction of register equality tests).
struct ConditionalOp {
  Ptm ptm;
  std::vector<int> targets;
  std::vector<RegisterCondition> conditions;
};

using Instruction = std::variant<ChannelOp, MeasureOp, ConditionalOp>;

/// An instruction sequence over n qubits. Construction validates targets,
/// register uniqueness, that conditions only reference earlier registers,
/// that channel PTMs are TP and that instruments validate (at `tol`).
class Circuit {
 public:
  Circuit(int num_qubits, std::vector<Instruction> instructions,
          double tol = 1e-6);

  int num_qubits() const { return num_qubits_; }
  const std::vector<Instruction>& instructions() const {
    return instructions_;
  }

  /// Register names in measurement order.
  const std::vector<std::string>& register_names() const {
    return register_names_;
  }

 private:
  int num_qubits_ = 0;
  std::vector<Instruction> instructions_;
  std::vector<std::string> register_names_;
};

/// Register assignments in measurement order.
using OutcomeRecord = std::vector<std::pair<std::string, std::string>>;

/// One classical-outcome branch of an exact run: its record, its total
/// probability and its normalized final state.
struct BranchState {
  OutcomeRecord outcome_record;
  double probability = 0.0;
  PauliVector state;
};

struct ExactResult {
  std::vector<BranchState> branches;
  /// Total probability of branches dropped at the p_min cutoff. Branch
  /// probabilities plus this mass sum to 1.
  double pruned_mass = 0.0;
};

struct ShotRecord {
  OutcomeRecord outcome_record;
  std::size_t shot_index = 0;
};

/// Depth-first enumeration of every measurement branch. Branches whose
/// cumulative probability falls to p_min or below are pruned and their mass
/// reported, never silently lost.
ExactResult run_exact(const Circuit& circuit, const PauliVector& v0,
                      double p_min = kProbabilityFloor);

/// Monte Carlo counterpart of run_exact. Shot k draws from an RNG stream
/// derived from (seed, k), so the output is a pure function of the inputs
/// and independent of scheduling.
std::vector<ShotRecord> run_sampled(const Circuit& circuit,
                                    const PauliVector& v0, std::size_t shots,
                                    std::uint64_t seed);

/// Sums branch probabilities grouped by the values of the selected
/// registers (key order follows the `registers` argument). The empty
/// selection yields the total retained probability under the empty key.
std::map<std::vector<std::string>, double> marginal_distribution(
    const std::vector<BranchState>& branches,
    const std::vector<std::string>& registers);

}  // namespace qikit
