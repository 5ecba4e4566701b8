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

#include "qikit/ptm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qikit {

namespace {

Eigen::Index check_same_dim(const Ptm& a, const Ptm& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("PTM dimension mismatch: " +
                                std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()));
  }
  return a.dim();
}

double min_hermitian_eigenvalue(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      (m + m.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace

Ptm::Ptm(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("PTM must be square");
  }
  num_qubits_ = qubits_from_pauli_dim(entries_.rows());
}

Ptm Ptm::identity(int num_qubits) {
  const auto d2 = static_cast<Eigen::Index>(pauli_dim(num_qubits));
  return Ptm(Eigen::MatrixXd::Identity(d2, d2));
}

PauliVector apply(const Ptm& ptm, const PauliVector& v) {
  if (ptm.dim() != v.dim()) {
    throw std::invalid_argument("PTM / state dimension mismatch");
  }
  return PauliVector(ptm.matrix() * v.coeffs());
}

Ptm compose(const Ptm& second, const Ptm& first) {
  check_same_dim(second, first);
  return Ptm(second.matrix() * first.matrix());
}

ChoiMatrix ptm_to_choi(const Ptm& ptm) {
  const int n = ptm.num_qubits();
  const std::size_t d = std::size_t{1} << n;
  const std::size_t d2 = pauli_dim(n);
  ChoiMatrix choi = ChoiMatrix::Zero(static_cast<Eigen::Index>(d * d),
                                     static_cast<Eigen::Index>(d * d));
  const double scale = 1.0 / static_cast<double>(d2);
  // C = (1/d^2) sum_ij Lambda_ij P_i (x) P_j^T, accumulated through the
  // single nonzero each Pauli factor contributes per row.
  for (std::size_t i = 0; i < d2; ++i) {
    for (std::size_t j = 0; j < d2; ++j) {
      const double entry = ptm(static_cast<Eigen::Index>(i),
                               static_cast<Eigen::Index>(j));
      if (entry == 0.0) continue;
      for (std::size_t a = 0; a < d; ++a) {
        const auto [a2, phase_i] = pauli_nonzero(i, n, a);
        for (std::size_t b = 0; b < d; ++b) {
          // (P_j^T)[b][b2] = P_j[b2][b] = conj(P_j[b][b2]), Paulis being
          // Hermitian; the nonzero sits at b2 = b ^ xmask_j.
          const auto [b2, phase_j] = pauli_nonzero(j, n, b);
          choi(static_cast<Eigen::Index>(a * d + b),
               static_cast<Eigen::Index>(a2 * d + b2)) +=
              scale * entry * phase_i * std::conj(phase_j);
        }
      }
    }
  }
  return choi;
}

Ptm choi_to_ptm(const ChoiMatrix& choi) {
  if (choi.rows() != choi.cols()) {
    throw std::invalid_argument("Choi matrix must be square");
  }
  double herm_residual = (choi - choi.adjoint()).cwiseAbs().maxCoeff();
  if (herm_residual > kHermiticityTol) {
    throw std::invalid_argument("Choi matrix is not Hermitian: residual " +
                                std::to_string(herm_residual));
  }
  Eigen::Index d = 1;
  int n = 0;
  while (d * d < choi.rows()) {
    d <<= 1;
    ++n;
  }
  if (d * d != choi.rows() || n < 1) {
    throw std::invalid_argument("Choi dimension is not a square power of 4");
  }
  const std::size_t dd = static_cast<std::size_t>(d);
  const std::size_t d2 = pauli_dim(n);
  Eigen::MatrixXd ptm(static_cast<Eigen::Index>(d2),
                      static_cast<Eigen::Index>(d2));
  for (std::size_t i = 0; i < d2; ++i) {
    for (std::size_t j = 0; j < d2; ++j) {
      Complex sum(0.0, 0.0);
      for (std::size_t a = 0; a < dd; ++a) {
        const auto [a2, phase_i] = pauli_nonzero(i, n, a);
        for (std::size_t b = 0; b < dd; ++b) {
          const auto [b2, phase_j] = pauli_nonzero(j, n, b);
          sum += phase_i * std::conj(phase_j) *
                 choi(static_cast<Eigen::Index>(a2 * dd + b2),
                      static_cast<Eigen::Index>(a * dd + b));
        }
      }
      ptm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          sum.real();
    }
  }
  return Ptm(std::move(ptm));
}

CpReport is_cp(const Ptm& ptm, double tol) {
  const double min_eig = min_hermitian_eigenvalue(ptm_to_choi(ptm));
  return {min_eig >= -tol, min_eig};
}

TpReport is_tp(const Ptm& ptm, double tol) {
  Eigen::VectorXd target = Eigen::VectorXd::Zero(ptm.dim());
  target(0) = 1.0;
  const double residual =
      (ptm.matrix().row(0).transpose() - target).cwiseAbs().maxCoeff();
  return {residual <= tol, residual};
}

TraceNonincreasingReport is_trace_nonincreasing(const Ptm& ptm, double tol) {
  const Eigen::Index d = Eigen::Index{1} << ptm.num_qubits();
  const ChoiMatrix choi = ptm_to_choi(ptm);
  // Trace out the output factor; scaled by d so TP maps reduce to I.
  Eigen::MatrixXcd reduced = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    reduced += choi.block(a * d, a * d, d, d);
  }
  const double min_eig = min_hermitian_eigenvalue(
      Eigen::MatrixXcd::Identity(d, d) - static_cast<double>(d) * reduced);
  return {min_eig >= -tol, min_eig};
}

bool is_unital(const Ptm& ptm, double tol) {
  Eigen::VectorXd target = Eigen::VectorXd::Zero(ptm.dim());
  target(0) = 1.0;
  return (ptm.matrix().col(0) - target).cwiseAbs().maxCoeff() <= tol;
}

PtmBlocks blocks(const Ptm& ptm) {
  const Eigen::Index d2 = ptm.dim();
  PtmBlocks b;
  b.tp_row = ptm.matrix().row(0).transpose();
  b.nonunital_col = ptm.matrix().col(0);
  b.unital_block = ptm.matrix().block(1, 1, d2 - 1, d2 - 1);
  b.diagonal = ptm.matrix().diagonal();
  return b;
}

Ptm ptm_from_blocks(const PtmBlocks& b) {
  const Eigen::Index d2 = b.tp_row.size();
  if (b.nonunital_col.size() != d2 || b.diagonal.size() != d2 ||
      b.unital_block.rows() != d2 - 1 || b.unital_block.cols() != d2 - 1) {
    throw std::invalid_argument("inconsistent block dimensions");
  }
  Eigen::MatrixXd m(d2, d2);
  m.block(1, 1, d2 - 1, d2 - 1) = b.unital_block;
  m.row(0) = b.tp_row.transpose();
  m.col(0) = b.nonunital_col;
  return Ptm(std::move(m));
}

Eigen::VectorXd pauli_fidelities(const Ptm& ptm) {
  return ptm.matrix().diagonal();
}

int numerical_rank(const Ptm& ptm, double tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(ptm.matrix());
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cutoff = tol * sv(0);
  return static_cast<int>((sv.array() > cutoff).count());
}

double entanglement_fidelity(const Ptm& ptm, const Ptm& target) {
  const Eigen::Index d2 = check_same_dim(ptm, target);
  return (target.matrix().transpose() * ptm.matrix()).trace() /
         static_cast<double>(d2);
}

Ptm ptm_from_kraus(const std::vector<Eigen::MatrixXcd>& kraus) {
  if (kraus.empty()) {
    throw std::invalid_argument("empty Kraus set");
  }
  const Eigen::Index d = kraus.front().rows();
  for (const auto& k : kraus) {
    if (k.rows() != d || k.cols() != d) {
      throw std::invalid_argument("Kraus operators must share one square "
                                  "dimension");
    }
  }
  Eigen::Index m = 1;
  int n = 0;
  while (m < d) {
    m <<= 1;
    ++n;
  }
  if (m != d || n < 1) {
    throw std::invalid_argument("Kraus dimension is not a power of two >= 2");
  }

  Eigen::MatrixXcd completeness = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& k : kraus) completeness += k.adjoint() * k;
  const double excess = min_hermitian_eigenvalue(
      Eigen::MatrixXcd::Identity(d, d) - completeness);
  if (excess < -1e-6) {
    throw std::invalid_argument(
        "Kraus set is trace-increasing: sum K^dag K exceeds I by " +
        std::to_string(-excess));
  }

  const std::size_t d2 = pauli_dim(n);
  const std::size_t dd = static_cast<std::size_t>(d);
  Eigen::MatrixXd ptm(static_cast<Eigen::Index>(d2),
                      static_cast<Eigen::Index>(d2));
  const double inv_d = 1.0 / static_cast<double>(d);
  for (std::size_t j = 0; j < d2; ++j) {
    Eigen::MatrixXcd mapped = Eigen::MatrixXcd::Zero(d, d);
    const Eigen::MatrixXcd pj = pauli_matrix(j, n);
    for (const auto& k : kraus) mapped += k * pj * k.adjoint();
    for (std::size_t i = 0; i < d2; ++i) {
      Complex trace(0.0, 0.0);
      for (std::size_t r = 0; r < dd; ++r) {
        const auto [c, phase] = pauli_nonzero(i, n, r);
        trace += phase * mapped(static_cast<Eigen::Index>(c),
                                static_cast<Eigen::Index>(r));
      }
      ptm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          trace.real() * inv_d;
    }
  }
  return Ptm(std::move(ptm));
}

Ptm embed(const Ptm& ptm, const std::vector<int>& targets, int n_total) {
  const int m = ptm.num_qubits();
  if (static_cast<int>(targets.size()) != m) {
    throw std::invalid_argument("target count does not match PTM qubit count");
  }
  if (n_total < 1) {
    throw std::invalid_argument("total qubit count must be positive");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n_total), false);
  for (int t : targets) {
    if (t < 0 || t >= n_total) {
      throw std::invalid_argument("embed target " + std::to_string(t) +
                                  " out of range");
    }
    if (seen[static_cast<std::size_t>(t)]) {
      throw std::invalid_argument("duplicate embed target " +
                                  std::to_string(t));
    }
    seen[static_cast<std::size_t>(t)] = true;
  }
  if (m == n_total) {
    bool in_order = true;
    for (int q = 0; q < m; ++q) in_order &= (targets[q] == q);
    if (in_order) return ptm;
  }

  const std::size_t big = pauli_dim(n_total);
  const std::size_t small = pauli_dim(m);
  // Base-4 digit shift of global qubit t (qubit 0 most significant).
  auto shift = [n_total](int t) { return 2 * (n_total - 1 - t); };

  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(big),
                                              static_cast<Eigen::Index>(big));
  for (std::size_t r = 0; r < big; ++r) {
    // Split the row index into the digits on the target qubits (mapped to
    // the PTM's local index) and the untouched rest.
    std::size_t local_row = 0;
    std::size_t rest = r;
    for (int q = 0; q < m; ++q) {
      const std::size_t digit = (r >> shift(targets[q])) & 3u;
      local_row = (local_row << 2) | digit;
      rest &= ~(std::size_t{3} << shift(targets[q]));
    }
    for (std::size_t local_col = 0; local_col < small; ++local_col) {
      const double entry = ptm(static_cast<Eigen::Index>(local_row),
                               static_cast<Eigen::Index>(local_col));
      if (entry == 0.0) continue;
      std::size_t c = rest;
      for (int q = 0; q < m; ++q) {
        const std::size_t digit = (local_col >> (2 * (m - 1 - q))) & 3u;
        c |= digit << shift(targets[q]);
      }
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = entry;
    }
  }
  return Ptm(std::move(out));
}

}  // namespace qikit
