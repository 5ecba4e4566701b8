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

#include "qikit/pauli.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace qikit {

namespace {

constexpr int kDefaultMaxQubits = 6;
constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};

int letter_value(char c) {
  switch (c) {
    case 'I':
      return 0;
    case 'X':
      return 1;
    case 'Y':
      return 2;
    case 'Z':
      return 3;
    default:
      throw std::invalid_argument(std::string("invalid Pauli character '") +
                                  c + "'; expected one of I, X, Y, Z");
  }
}

// Base-4 digit of `index` for qubit q (qubit 0 most significant).
int digit(std::size_t index, int q, int n) {
  return static_cast<int>((index >> (2 * (n - 1 - q))) & 3u);
}

// Bit of basis-state row r for qubit q (qubit 0 most significant).
int bit(std::size_t r, int q, int n) {
  return static_cast<int>((r >> (n - 1 - q)) & 1u);
}

// An n-qubit Pauli has one nonzero per row: P[r][r ^ xmask]. The xmask
// collects the X/Y letters; the per-row phase is the product of the Y and Z
// factors.
std::size_t pauli_xmask(std::size_t index, int n) {
  std::size_t mask = 0;
  for (int q = 0; q < n; ++q) {
    int l = digit(index, q, n);
    if (l == 1 || l == 2) mask |= std::size_t{1} << (n - 1 - q);
  }
  return mask;
}

Complex pauli_row_phase(std::size_t index, std::size_t r, int n) {
  Complex phase(1.0, 0.0);
  for (int q = 0; q < n; ++q) {
    switch (digit(index, q, n)) {
      case 2:  // Y: [[0, -i], [i, 0]]
        phase *= bit(r, q, n) ? Complex(0.0, 1.0) : Complex(0.0, -1.0);
        break;
      case 3:  // Z
        if (bit(r, q, n)) phase = -phase;
        break;
      default:
        break;
    }
  }
  return phase;
}

int qubits_from_matrix_dim(Eigen::Index d) {
  int n = 0;
  Eigen::Index m = 1;
  while (m < d) {
    m <<= 1;
    ++n;
  }
  if (m != d || n < 1) {
    throw std::invalid_argument("matrix dimension " + std::to_string(d) +
                                " is not a power of two >= 2");
  }
  return n;
}

void check_hermitian(const Eigen::MatrixXcd& rho, double tol) {
  if (rho.rows() != rho.cols()) {
    throw std::invalid_argument("density matrix must be square");
  }
  double residual = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (residual > tol) {
    throw std::invalid_argument("matrix is not Hermitian: residual " +
                                std::to_string(residual));
  }
}

}  // namespace

int max_qubits() {
  static const int value = [] {
    if (const char* env = std::getenv("QIKIT_MAX_QUBITS")) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end != env && *end == '\0' && v >= 1 && v <= 15) {
        return static_cast<int>(v);
      }
    }
    return kDefaultMaxQubits;
  }();
  return value;
}

void check_qubit_count(int num_qubits) {
  if (num_qubits < 1 || num_qubits > max_qubits()) {
    throw std::invalid_argument(
        "qubit count " + std::to_string(num_qubits) + " outside [1, " +
        std::to_string(max_qubits()) +
        "] (set QIKIT_MAX_QUBITS to raise the limit)");
  }
}

std::size_t pauli_dim(int num_qubits) {
  return std::size_t{1} << (2 * num_qubits);
}

int qubits_from_pauli_dim(Eigen::Index dim) {
  int n = 0;
  Eigen::Index m = 1;
  while (m < dim) {
    m <<= 2;
    ++n;
  }
  if (m != dim || n < 1) {
    throw std::invalid_argument("vector length " + std::to_string(dim) +
                                " is not a power of 4 >= 4");
  }
  return n;
}

std::size_t pauli_index(std::string_view label) {
  if (label.empty()) {
    throw std::invalid_argument("empty Pauli label");
  }
  std::size_t index = 0;
  for (char c : label) {
    index = (index << 2) | static_cast<std::size_t>(letter_value(c));
  }
  return index;
}

std::string pauli_label(std::size_t index, int num_qubits) {
  if (index >= pauli_dim(num_qubits)) {
    throw std::invalid_argument("Pauli index out of range");
  }
  std::string label(static_cast<std::size_t>(num_qubits), 'I');
  for (int q = 0; q < num_qubits; ++q) {
    label[static_cast<std::size_t>(q)] = kLetters[digit(index, q, num_qubits)];
  }
  return label;
}

Eigen::MatrixXcd pauli_matrix(std::size_t index, int num_qubits) {
  if (index >= pauli_dim(num_qubits)) {
    throw std::invalid_argument("Pauli index out of range");
  }
  const Eigen::Index d = Eigen::Index{1} << num_qubits;
  const std::size_t xmask = pauli_xmask(index, num_qubits);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (std::size_t r = 0; r < static_cast<std::size_t>(d); ++r) {
    out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r ^ xmask)) =
        pauli_row_phase(index, r, num_qubits);
  }
  return out;
}

Eigen::MatrixXcd pauli_matrix(std::string_view label) {
  return pauli_matrix(pauli_index(label), static_cast<int>(label.size()));
}

std::pair<std::size_t, Complex> pauli_nonzero(std::size_t index,
                                              int num_qubits,
                                              std::size_t row) {
  return {row ^ pauli_xmask(index, num_qubits),
          pauli_row_phase(index, row, num_qubits)};
}

PauliVector::PauliVector(Eigen::VectorXd coeffs)
    : coeffs_(std::move(coeffs)) {
  num_qubits_ = qubits_from_pauli_dim(coeffs_.size());
}

PauliVector::PauliVector(std::initializer_list<double> coeffs)
    : PauliVector(Eigen::Map<const Eigen::VectorXd>(
          coeffs.begin(), static_cast<Eigen::Index>(coeffs.size()))) {}

PauliVector PauliVector::maximally_mixed(int num_qubits) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(
      static_cast<Eigen::Index>(pauli_dim(num_qubits)));
  v(0) = 1.0;
  return PauliVector(std::move(v));
}

PauliVector PauliVector::basis_state(int num_qubits, std::uint64_t bits) {
  if (bits >> num_qubits) {
    throw std::invalid_argument("basis state index out of range");
  }
  const std::size_t d2 = pauli_dim(num_qubits);
  Eigen::VectorXd v(static_cast<Eigen::Index>(d2));
  for (std::size_t p = 0; p < d2; ++p) {
    double value = 1.0;
    for (int q = 0; q < num_qubits; ++q) {
      const int l = digit(p, q, num_qubits);
      if (l == 1 || l == 2) {
        value = 0.0;
        break;
      }
      if (l == 3 && ((bits >> (num_qubits - 1 - q)) & 1u)) value = -value;
    }
    v(static_cast<Eigen::Index>(p)) = value;
  }
  return PauliVector(std::move(v));
}

PauliVector vectorize(const Eigen::MatrixXcd& rho, double hermiticity_tol) {
  check_hermitian(rho, hermiticity_tol);
  const int n = qubits_from_matrix_dim(rho.rows());
  const std::size_t d = static_cast<std::size_t>(rho.rows());
  const std::size_t d2 = pauli_dim(n);
  Eigen::VectorXd v(static_cast<Eigen::Index>(d2));
  for (std::size_t p = 0; p < d2; ++p) {
    const std::size_t xmask = pauli_xmask(p, n);
    Complex trace(0.0, 0.0);
    for (std::size_t r = 0; r < d; ++r) {
      trace += pauli_row_phase(p, r, n) *
               rho(static_cast<Eigen::Index>(r ^ xmask),
                   static_cast<Eigen::Index>(r));
    }
    if (std::abs(trace.imag()) > hermiticity_tol) {
      throw std::invalid_argument(
          "Pauli component has imaginary residue above tolerance");
    }
    v(static_cast<Eigen::Index>(p)) = trace.real();
  }
  return PauliVector(std::move(v));
}

Eigen::MatrixXcd devectorize(const PauliVector& v) {
  const int n = v.num_qubits();
  const std::size_t d = std::size_t{1} << n;
  const std::size_t d2 = pauli_dim(n);
  Eigen::MatrixXcd rho =
      Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d),
                             static_cast<Eigen::Index>(d));
  const double inv_d = 1.0 / static_cast<double>(d);
  for (std::size_t p = 0; p < d2; ++p) {
    const double coeff = v[static_cast<Eigen::Index>(p)];
    if (coeff == 0.0) continue;
    const std::size_t xmask = pauli_xmask(p, n);
    for (std::size_t r = 0; r < d; ++r) {
      rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r ^ xmask)) +=
          coeff * inv_d * pauli_row_phase(p, r, n);
    }
  }
  return rho;
}

}  // namespace qikit
