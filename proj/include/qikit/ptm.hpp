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

#include "qikit/pauli.hpp"

namespace qikit {

/// Pauli transfer matrix: the d^2 x d^2 real matrix of a linear map in the
/// Pauli basis, Lambda_ij = Tr[P_i E(P_j)] / d. Acts on PauliVectors by
/// matrix multiplication. Entries of physical maps lie in [-1, 1], but no
/// such bound is enforced here: non-TP and non-CP matrices are first-class
/// inputs of the validation routines.
class Ptm {
 public:
  Ptm() = default;

  /// Takes ownership of the matrix; it must be square with side 4^n.
  explicit Ptm(Eigen::MatrixXd entries);

  static Ptm identity(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dim() const { return entries_.rows(); }
  const Eigen::MatrixXd& matrix() const { return entries_; }
  double operator()(Eigen::Index i, Eigen::Index j) const {
    return entries_(i, j);
  }

 private:
  Eigen::MatrixXd entries_;
  int num_qubits_ = 0;
};

using ChoiMatrix = Eigen::MatrixXcd;

/// The four blocks of a PTM: the top (trace) row, the leftmost (non-unital)
/// column, the lower-right unital block and the diagonal. Copies, not views;
/// reassembling them reproduces the source matrix exactly.
struct PtmBlocks {
  Eigen::VectorXd tp_row;
  Eigen::VectorXd nonunital_col;
  Eigen::MatrixXd unital_block;
  Eigen::VectorXd diagonal;
};

struct CpReport {
  bool cp = false;
  double min_choi_eigenvalue = 0.0;
};

struct TpReport {
  bool tp = false;
  double top_row_residual = 0.0;  // max_j |Lambda_0j - delta_0j|
};

struct TraceNonincreasingReport {
  bool nonincreasing = false;
  double min_eigenvalue = 0.0;  // of I - d * (Choi traced over the output)
};

/// v' = Lambda v.
PauliVector apply(const Ptm& ptm, const PauliVector& v);

/// Matrix product `second * first`: `first` acts first.
Ptm compose(const Ptm& second, const Ptm& first);

/// Choi matrix C = (1/d^2) sum_ij Lambda_ij P_i (x) P_j^T, normalized so the
/// identity channel maps to the maximally entangled projector (Tr C = 1 for
/// TP maps). The map is CP iff C is positive semidefinite.
ChoiMatrix ptm_to_choi(const Ptm& ptm);

/// Inverse transform: Lambda_ij = Tr[(P_i (x) P_j^T) C].
Ptm choi_to_ptm(const ChoiMatrix& choi);

/// CP test: minimum eigenvalue of the Choi matrix >= -tol.
CpReport is_cp(const Ptm& ptm, double tol = 1e-8);

/// TP test: top row equals (1, 0, ..., 0) to tol.
TpReport is_tp(const Ptm& ptm, double tol = 1e-9);

/// Trace-nonincreasing test: apply(ptm, v) never increases the identity
/// component on physical states. Evaluated as a PSD test on
/// I - d * Tr_out[Choi], which is TP-normalized (zero for TP maps).
TraceNonincreasingReport is_trace_nonincreasing(const Ptm& ptm,
                                                double tol = 1e-9);

/// Unitality test: first column equals (1, 0, ..., 0)^T to tol.
bool is_unital(const Ptm& ptm, double tol = 1e-9);

PtmBlocks blocks(const Ptm& ptm);

/// Reassembles a PTM from its blocks (top row and first column win over the
/// unital block on the overlap; the diagonal is redundant).
Ptm ptm_from_blocks(const PtmBlocks& b);

/// The diagonal of Lambda: survival probability of each Pauli component.
Eigen::VectorXd pauli_fidelities(const Ptm& ptm);

/// Count of singular values above tol * sigma_max.
int numerical_rank(const Ptm& ptm, double tol = 1e-6);

/// Tr[target^T Lambda] / d^2. Equals 1 when both are the same unitary PTM.
double entanglement_fidelity(const Ptm& ptm, const Ptm& target);

/// PTM of the map E(rho) = sum_k K_k rho K_k^dagger. All operators must be
/// square with equal power-of-two dimension, and sum_k K^dag K <= I.
Ptm ptm_from_kraus(const std::vector<Eigen::MatrixXcd>& kraus);

/// Extends a PTM acting on `targets` (ptm qubit q -> circuit qubit
/// targets[q]) to `n_total` qubits, acting as the identity elsewhere.
Ptm embed(const Ptm& ptm, const std::vector<int>& targets, int n_total);

}  // namespace qikit
