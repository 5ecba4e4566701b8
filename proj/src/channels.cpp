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

#include "qikit/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace qikit::channels {

namespace {

void check_rate(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
  }
}

}  // namespace

Eigen::Matrix2cd x_gate() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd y_gate() {
  Eigen::Matrix2cd m;
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

Eigen::Matrix2cd z_gate() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

Eigen::Matrix2cd hadamard() {
  Eigen::Matrix2cd m;
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

Eigen::MatrixXcd cnot() {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 3) = 1;
  m(3, 2) = 1;
  return m;
}

Eigen::Matrix2cd rotation_gate(char axis, double angle) {
  Eigen::Matrix2cd generator;
  switch (axis) {
    case 'x':
      generator = x_gate();
      break;
    case 'y':
      generator = y_gate();
      break;
    case 'z':
      generator = z_gate();
      break;
    default:
      throw std::invalid_argument("rotation axis must be 'x', 'y' or 'z'");
  }
  const double half = angle / 2.0;
  return std::cos(half) * Eigen::Matrix2cd::Identity() -
         Complex(0, 1) * std::sin(half) * generator;
}

std::vector<Eigen::MatrixXcd> bit_flip_kraus(double p) {
  check_rate(p, "bit flip probability");
  return {std::sqrt(1.0 - p) * Eigen::Matrix2cd::Identity(),
          std::sqrt(p) * x_gate()};
}

std::vector<Eigen::MatrixXcd> dephasing_kraus(double p) {
  check_rate(p, "dephasing probability");
  return {std::sqrt(1.0 - p) * Eigen::Matrix2cd::Identity(),
          std::sqrt(p) * z_gate()};
}

std::vector<Eigen::MatrixXcd> depolarizing_kraus(double p) {
  check_rate(p, "depolarizing probability");
  const double s = std::sqrt(p) / 2.0;
  return {std::sqrt(1.0 - 3.0 * p / 4.0) * Eigen::Matrix2cd::Identity(),
          s * x_gate(), s * y_gate(), s * z_gate()};
}

std::vector<Eigen::MatrixXcd> amplitude_damping_kraus(double gamma) {
  check_rate(gamma, "damping probability");
  Eigen::Matrix2cd k0 = Eigen::Matrix2cd::Zero();
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - gamma);
  Eigen::Matrix2cd k1 = Eigen::Matrix2cd::Zero();
  k1(0, 1) = std::sqrt(gamma);
  return {k0, k1};
}

Ptm x_ptm() { return ptm_from_kraus({x_gate()}); }

Ptm bit_flip_ptm(double p) { return ptm_from_kraus(bit_flip_kraus(p)); }

Ptm dephasing_ptm(double p) { return ptm_from_kraus(dephasing_kraus(p)); }

Ptm depolarizing_ptm(double p) {
  return ptm_from_kraus(depolarizing_kraus(p));
}

Ptm amplitude_damping_ptm(double gamma) {
  return ptm_from_kraus(amplitude_damping_kraus(gamma));
}

Ptm rotation_ptm(char axis, double angle) {
  return ptm_from_kraus({rotation_gate(axis, angle)});
}

}  // namespace qikit::channels
