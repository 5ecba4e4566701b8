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

#include <filesystem>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "qikit/circuit.hpp"
#include "qikit/instrument.hpp"

// JSON file formats. Instruments serialize as
//   { "format_version": "1", "pauli_order": "IXYZ-lex", "num_qubits": n,
//     "outcomes": [ { "label": "...", "ptm": [row-major reals] }, ... ] }
// and circuits as a tagged instruction list (ops "channel", "measure",
// "conditional") that may reference instrument files by path or inline
// them. Numbers round-trip exactly: the writer emits the shortest decimal
// form that parses back to the same 64-bit float.

namespace qikit {

using json = nlohmann::ordered_json;

inline constexpr std::string_view kFormatVersion = "1";
inline constexpr std::string_view kPauliOrderToken = "IXYZ-lex";

/// A malformed input file (bad JSON, missing fields, wrong shapes).
/// Distinct from semantic failures so the CLI can map it to exit code 2.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json instrument_to_json(const QuantumInstrument& instr);
QuantumInstrument instrument_from_json(const json& j);

QuantumInstrument load_instrument(const std::filesystem::path& path);
void save_instrument(const QuantumInstrument& instr,
                     const std::filesystem::path& path);

/// Serializes with instruments inlined, so the output is self-contained.
json circuit_to_json(const Circuit& circuit);

/// `base_dir` resolves relative instrument references.
Circuit circuit_from_json(const json& j, const std::filesystem::path& base_dir);

Circuit load_circuit(const std::filesystem::path& path);
void save_circuit(const Circuit& circuit, const std::filesystem::path& path);

json validation_to_json(const ValidationReport& report);

/// Machine-readable diagnostic report. `input_digest` identifies the bytes
/// the report was computed from.
json report_to_json(const DiagnosticReport& report,
                    const std::string& input_digest);

/// FNV-1a 64-bit digest of a byte string, as "fnv1a64:<hex>".
std::string input_digest(std::string_view bytes);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace qikit
