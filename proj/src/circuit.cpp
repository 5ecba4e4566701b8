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

#include "qikit/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace qikit {

namespace {

void check_targets(const std::vector<int>& targets, int op_qubits,
                   int num_qubits) {
  if (static_cast<int>(targets.size()) != op_qubits) {
    throw std::invalid_argument("instruction target count does not match "
                                "operator qubit count");
  }
  std::set<int> seen;
  for (int t : targets) {
    if (t < 0 || t >= num_qubits) {
      throw std::invalid_argument("target qubit " + std::to_string(t) +
                                  " out of range");
    }
    if (!seen.insert(t).second) {
      throw std::invalid_argument("duplicate target qubit " +
                                  std::to_string(t));
    }
  }
}

const std::string* find_register(const OutcomeRecord& record,
                                 const std::string& name) {
  for (const auto& [reg, value] : record) {
    if (reg == name) return &value;
  }
  return nullptr;
}

bool conditions_met(const std::vector<RegisterCondition>& conditions,
                    const OutcomeRecord& record) {
  for (const auto& cond : conditions) {
    const std::string* value = find_register(record, cond.register_name);
    if (value == nullptr || *value != cond.equals) return false;
  }
  return true;
}

// Per-instruction operators embedded into the full register up front, so
// branch enumeration is plain matrix arithmetic.
struct EmbeddedInstruction {
  enum class Kind { kChannel, kMeasure, kConditional } kind;
  std::vector<Ptm> operators;       // one per branch for measurements
  std::vector<std::string> labels;  // outcome labels for measurements
  std::string register_name;
  std::vector<RegisterCondition> conditions;
};

std::vector<EmbeddedInstruction> embed_circuit(const Circuit& circuit) {
  std::vector<EmbeddedInstruction> result;
  result.reserve(circuit.instructions().size());
  const int n = circuit.num_qubits();
  for (const auto& instruction : circuit.instructions()) {
    EmbeddedInstruction emb;
    if (const auto* ch = std::get_if<ChannelOp>(&instruction)) {
      emb.kind = EmbeddedInstruction::Kind::kChannel;
      emb.operators.push_back(embed(ch->ptm, ch->targets, n));
    } else if (const auto* m = std::get_if<MeasureOp>(&instruction)) {
      emb.kind = EmbeddedInstruction::Kind::kMeasure;
      emb.register_name = m->register_name;
      for (const auto& outcome : m->instrument.outcomes()) {
        emb.operators.push_back(embed(outcome.ptm, m->targets, n));
        emb.labels.push_back(outcome.label);
      }
    } else {
      const auto& cond = std::get<ConditionalOp>(instruction);
      emb.kind = EmbeddedInstruction::Kind::kConditional;
      emb.operators.push_back(embed(cond.ptm, cond.targets, n));
      emb.conditions = cond.conditions;
    }
    result.push_back(std::move(emb));
  }
  return result;
}

void check_initial_state(const Circuit& circuit, const PauliVector& v0) {
  if (v0.dim() != static_cast<Eigen::Index>(pauli_dim(circuit.num_qubits()))) {
    throw std::invalid_argument("initial state dimension mismatch");
  }
  if (std::abs(v0.trace() - 1.0) > 1e-6) {
    throw std::invalid_argument("initial state is not normalized");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Circuit::Circuit(int num_qubits, std::vector<Instruction> instructions,
                 double tol)
    : num_qubits_(num_qubits), instructions_(std::move(instructions)) {
  check_qubit_count(num_qubits_);
  std::set<std::string> registers;
  for (std::size_t i = 0; i < instructions_.size(); ++i) {
    const auto& instruction = instructions_[i];
    if (const auto* ch = std::get_if<ChannelOp>(&instruction)) {
      check_targets(ch->targets, ch->ptm.num_qubits(), num_qubits_);
      if (!is_tp(ch->ptm, tol).tp) {
        throw std::invalid_argument("channel at instruction " +
                                    std::to_string(i) +
                                    " is not trace-preserving");
      }
    } else if (const auto* m = std::get_if<MeasureOp>(&instruction)) {
      check_targets(m->targets, m->instrument.num_qubits(), num_qubits_);
      if (m->register_name.empty()) {
        throw std::invalid_argument("measurement register name is empty");
      }
      if (!registers.insert(m->register_name).second) {
        throw std::invalid_argument("register '" + m->register_name +
                                    "' written twice");
      }
      if (!validate(m->instrument, tol).passed) {
        throw std::invalid_argument("instrument at instruction " +
                                    std::to_string(i) +
                                    " fails validation at tolerance " +
                                    std::to_string(tol));
      }
      register_names_.push_back(m->register_name);
    } else {
      const auto& cond = std::get<ConditionalOp>(instruction);
      check_targets(cond.targets, cond.ptm.num_qubits(), num_qubits_);
      if (!is_tp(cond.ptm, tol).tp) {
        throw std::invalid_argument("conditional channel at instruction " +
                                    std::to_string(i) +
                                    " is not trace-preserving");
      }
      for (const auto& c : cond.conditions) {
        if (!registers.contains(c.register_name)) {
          throw std::invalid_argument(
              "condition references register '" + c.register_name +
              "' before it is written");
        }
      }
    }
  }
}

ExactResult run_exact(const Circuit& circuit, const PauliVector& v0,
                      double p_min) {
  check_initial_state(circuit, v0);
  const std::vector<EmbeddedInstruction> program = embed_circuit(circuit);

  ExactResult result;
  // Depth-first walk; states are kept normalized, the branch weight rides
  // along as the cumulative probability.
  auto walk = [&](auto&& self, std::size_t pc, Eigen::VectorXd state,
                  double probability, OutcomeRecord record) -> void {
    for (; pc < program.size(); ++pc) {
      const auto& instr = program[pc];
      switch (instr.kind) {
        case EmbeddedInstruction::Kind::kChannel:
          state = instr.operators[0].matrix() * state;
          break;
        case EmbeddedInstruction::Kind::kConditional:
          if (conditions_met(instr.conditions, record)) {
            state = instr.operators[0].matrix() * state;
          }
          break;
        case EmbeddedInstruction::Kind::kMeasure: {
          for (std::size_t k = 0; k < instr.operators.size(); ++k) {
            const Eigen::VectorXd branch =
                instr.operators[k].matrix() * state;
            const double p = branch(0);
            const double weight = probability * std::max(p, 0.0);
            if (weight <= p_min) {
              result.pruned_mass += std::max(weight, 0.0);
              continue;
            }
            OutcomeRecord next_record = record;
            next_record.emplace_back(instr.register_name, instr.labels[k]);
            self(self, pc + 1, branch / p, weight, std::move(next_record));
          }
          return;
        }
      }
    }
    result.branches.push_back(
        {std::move(record), probability, PauliVector(std::move(state))});
  };

  walk(walk, 0, v0.coeffs(), 1.0, {});
  return result;
}

std::vector<ShotRecord> run_sampled(const Circuit& circuit,
                                    const PauliVector& v0, std::size_t shots,
                                    std::uint64_t seed) {
  if (shots < 1) {
    throw std::invalid_argument("shot count must be at least 1");
  }
  check_initial_state(circuit, v0);
  const std::vector<EmbeddedInstruction> program = embed_circuit(circuit);

  std::vector<ShotRecord> records;
  records.reserve(shots);
  for (std::size_t shot = 0; shot < shots; ++shot) {
    // Independent stream per shot: results do not depend on evaluation
    // order, so shots could be distributed without changing the output.
    std::mt19937_64 rng(splitmix64(splitmix64(seed) + shot));
    Eigen::VectorXd state = v0.coeffs();
    OutcomeRecord record;
    for (const auto& instr : program) {
      switch (instr.kind) {
        case EmbeddedInstruction::Kind::kChannel:
          state = instr.operators[0].matrix() * state;
          break;
        case EmbeddedInstruction::Kind::kConditional:
          if (conditions_met(instr.conditions, record)) {
            state = instr.operators[0].matrix() * state;
          }
          break;
        case EmbeddedInstruction::Kind::kMeasure: {
          std::vector<double> probs(instr.operators.size());
          double total = 0.0;
          for (std::size_t k = 0; k < instr.operators.size(); ++k) {
            probs[k] =
                std::max(instr.operators[k].matrix().row(0).dot(state), 0.0);
            total += probs[k];
          }
          if (total <= 0.0) {
            throw std::runtime_error("all outcome probabilities vanish at "
                                     "register '" + instr.register_name +
                                     "'");
          }
          const double draw = next_uniform(rng) * total;
          double cumulative = 0.0;
          std::size_t pick = instr.operators.size() - 1;
          for (std::size_t k = 0; k < instr.operators.size(); ++k) {
            cumulative += probs[k];
            if (draw < cumulative) {
              pick = k;
              break;
            }
          }
          state = instr.operators[pick].matrix() * state / probs[pick];
          record.emplace_back(instr.register_name, instr.labels[pick]);
          break;
        }
      }
    }
    records.push_back({std::move(record), shot});
  }
  return records;
}

std::map<std::vector<std::string>, double> marginal_distribution(
    const std::vector<BranchState>& branches,
    const std::vector<std::string>& registers) {
  std::map<std::vector<std::string>, double> marginal;
  for (const auto& branch : branches) {
    std::vector<std::string> key;
    key.reserve(registers.size());
    for (const auto& name : registers) {
      const std::string* value = find_register(branch.outcome_record, name);
      if (value == nullptr) {
        throw std::invalid_argument("unknown register '" + name + "'");
      }
      key.push_back(*value);
    }
    marginal[key] += branch.probability;
  }
  return marginal;
}

}  // namespace qikit
