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

#include <vector>

#include <Eigen/Dense>

#include "qikit/ptm.hpp"

// Kraus sets and PTMs of the standard single-qubit gates and noise channels
// used by the instrument synthesizer and the test fixtures.

namespace qikit::channels {

Eigen::Matrix2cd x_gate();
Eigen::Matrix2cd y_gate();
Eigen::Matrix2cd z_gate();
Eigen::Matrix2cd hadamard();
Eigen::MatrixXcd cnot();  // control qubit 0, target qubit 1

/// exp(-i angle sigma_axis / 2), axis one of 'x', 'y', 'z'.
Eigen::Matrix2cd rotation_gate(char axis, double angle);

/// rho -> (1-p) rho + p X rho X.
std::vector<Eigen::MatrixXcd> bit_flip_kraus(double p);

/// rho -> (1-p) rho + p Z rho Z.
std::vector<Eigen::MatrixXcd> dephasing_kraus(double p);

/// rho -> (1-p) rho + p I/2: {sqrt(1-3p/4) I, sqrt(p)/2 X, Y, Z}.
std::vector<Eigen::MatrixXcd> depolarizing_kraus(double p);

/// Amplitude damping with decay probability gamma.
std::vector<Eigen::MatrixXcd> amplitude_damping_kraus(double gamma);

Ptm x_ptm();
Ptm bit_flip_ptm(double p);
Ptm dephasing_ptm(double p);
Ptm depolarizing_ptm(double p);
Ptm amplitude_damping_ptm(double gamma);
Ptm rotation_ptm(char axis, double angle);

}  // namespace qikit::channels
