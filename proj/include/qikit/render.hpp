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

#include <string>

#include "qikit/instrument.hpp"
#include "qikit/ptm.hpp"

namespace qikit {

/// SVG heatmap of one PTM: diverging color scale clamped to [-1, 1]
/// (red positive, blue negative, white at zero), cells annotated to two
/// decimals, Pauli labels on both axes. Output bytes are a pure function
/// of the input.
std::string render_ptm_svg(const Ptm& ptm, const std::string& title);

/// One heatmap per branch, laid out left to right in a single SVG.
std::string render_instrument_svg(const QuantumInstrument& instr);

}  // namespace qikit
