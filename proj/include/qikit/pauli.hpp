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

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace qikit {

using Complex = std::complex<double>;

/// Hermiticity tolerance applied to density-matrix inputs.
inline constexpr double kHermiticityTol = 1e-9;

/// Largest qubit count the dense 4^n representation will accept.
/// Override with the QIKIT_MAX_QUBITS environment variable.
int max_qubits();

/// Throws std::invalid_argument if n is outside [1, max_qubits()].
void check_qubit_count(int num_qubits);

/// 4^n, the side length of an n-qubit PTM.
std::size_t pauli_dim(int num_qubits);

/// Inverse of pauli_dim. Throws std::invalid_argument if dim is not a
/// positive power of 4.
int qubits_from_pauli_dim(Eigen::Index dim);

// Pauli labels are strings over {I, X, Y, Z}, one character per qubit with
// the leftmost qubit most significant. Their index is the base-4 value with
// I=0, X=1, Y=2, Z=3, which makes the full label set lexicographically
// ordered: I, X, Y, Z for one qubit; II, IX, IY, IZ, XI, ... for two.
std::size_t pauli_index(std::string_view label);
std::string pauli_label(std::size_t index, int num_qubits);

/// Dense matrix of an n-qubit Pauli operator (tensor product of the four
/// single-qubit Paulis). Throws on characters outside {I, X, Y, Z}.
Eigen::MatrixXcd pauli_matrix(std::string_view label);
Eigen::MatrixXcd pauli_matrix(std::size_t index, int num_qubits);

/// Sparse access: an n-qubit Pauli has exactly one nonzero per row. Returns
/// that entry of `row` as (column, value).
std::pair<std::size_t, Complex> pauli_nonzero(std::size_t index,
                                              int num_qubits,
                                              std::size_t row);

/// A Hermitian operator expanded in the n-qubit Pauli basis with components
/// v_P = Tr[P rho]. For a normalized state the leading component is 1.
class PauliVector {
 public:
  PauliVector() = default;

  /// Takes ownership of the coefficient vector; its length must be a
  /// positive power of 4.
  explicit PauliVector(Eigen::VectorXd coeffs);
  PauliVector(std::initializer_list<double> coeffs);

  /// (1, 0, ..., 0): the maximally mixed state.
  static PauliVector maximally_mixed(int num_qubits);

  /// |b><b| for the computational basis state with bit pattern `bits`
  /// (qubit 0 is the most significant bit, matching the label order).
  static PauliVector basis_state(int num_qubits, std::uint64_t bits);

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dim() const { return coeffs_.size(); }

  /// The identity component, i.e. Tr[rho].
  double trace() const { return coeffs_(0); }

  double operator[](Eigen::Index i) const { return coeffs_(i); }
  const Eigen::VectorXd& coeffs() const { return coeffs_; }

 private:
  Eigen::VectorXd coeffs_;
  int num_qubits_ = 0;
};

/// Expands rho in the Pauli basis: v_P = Tr[P rho]. The input must be
/// Hermitian to `hermiticity_tol`; the imaginary residue of every component
/// is checked against the same bound.
PauliVector vectorize(const Eigen::MatrixXcd& rho,
                      double hermiticity_tol = kHermiticityTol);

/// Inverse of vectorize: rho = (1/d) sum_P v_P P.
Eigen::MatrixXcd devectorize(const PauliVector& v);

}  // namespace qikit
