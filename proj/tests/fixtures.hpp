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

#include <Eigen/Dense>

#include "qikit/instrument.hpp"

namespace fixtures {

// Published single-qubit dispersive-readout reconstruction: top rows to
// 1e-4, first columns and ZZ diagonals to 1e-2, residual XX/YY coherences
// at the reported 0.01 level, everything unreported zero. The same numbers
// ship in fixtures/paper_experimental.json; test_io pins the two together.
inline qikit::QuantumInstrument experimental_instrument() {
  Eigen::MatrixXd m0(4, 4);
  m0 << 0.5117, 0.0018, -0.0026, 0.4940,
        0.0,    0.01,    0.0,    0.0,
       -0.01,   0.0,     0.01,   0.0,
        0.49,   0.0,     0.0,    0.49;
  Eigen::MatrixXd m1(4, 4);
  m1 << 0.4883, -0.0018, 0.0026, -0.4940,
        0.0,     0.01,   0.0,     0.0,
        0.0,     0.0,    0.01,    0.0,
       -0.41,    0.0,    0.0,     0.43;
  return qikit::QuantumInstrument(
      1, {{"0", qikit::Ptm(std::move(m0))}, {"1", qikit::Ptm(std::move(m1))}});
}

// Loose tolerance at which the experimental fixture passes validation: its
// published entries are rounded, which leaves ~6e-3 CP and trace residuals.
inline constexpr double kExperimentalTol = 0.02;

}  // namespace fixtures
