// Copyright 2026 The cartan-synth Authors
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
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cartan/pauli_string.hpp"

namespace cartan {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Residual scale for factorization checks; every check multiplies it by dim.
inline constexpr double kBaseTolerance = 1e-10;
/// Unitarity required of a validated Unitary, per unit of dimension.
inline constexpr double kUnitarityTolerance = 1e-12;

/// Dense 2^n x 2^n unitary in |q1...qn> order (q1 most significant).
///
/// Values constructed through `Unitary(Matrix)` are checked against
/// ||U^dag U - I||_F <= 1e-12 * dim. Factorization code builds intermediate
/// products through `unchecked`, which still verifies the shape.
class Unitary {
 public:
  Unitary() = default;
  explicit Unitary(Matrix m);

  static Unitary checked(Matrix m, double tol_per_dim);
  static Unitary unchecked(Matrix m);
  static Unitary identity(int qubits);

  int qubits() const { return qubits_; }
  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

  Unitary adjoint() const;
  double unitarity_residual() const;

  friend Unitary operator*(const Unitary& a, const Unitary& b);

 private:
  Unitary(Matrix m, int qubits) : m_(std::move(m)), qubits_(qubits) {}

  Matrix m_;
  int qubits_ = 0;
};

/// Returns n with 2^n == dim, or throws InvalidArgument.
int qubits_for_dim(Eigen::Index dim);

double unitarity_residual(const Matrix& m);

/// Cosine-sine factors: reordered(U) = diag(L0,L1) [[C,S],[-S,C]] diag(R0,R1).
struct CsdResult {
  Unitary l0, l1, r0, r1;
  std::vector<double> theta;  // ascending, each in [0, pi/2]
};

struct EigResult {
  Unitary q;                   // eigenvectors as columns
  std::vector<Complex> lambda;  // unit-modulus eigenvalues
};

/// Haar-distributed special unitary on `qubits` qubits, deterministic in seed.
Unitary haar_unitary(int qubits, std::uint64_t seed);

/// perm[i] is the |q1..qn> index stored at position i of the |qn q1..q(n-1)>
/// ordering, i.e. reordered(i, j) = U(perm[i], perm[j]).
std::vector<std::size_t> reorder_last_qubit_major(int qubits);
std::vector<std::size_t> invert_permutation(std::span<const std::size_t> perm);
Matrix permute(const Matrix& m, std::span<const std::size_t> perm);

/// Block (a, b) with respect to the last qubit: result(i, j) = m(2i+a, 2j+b).
Matrix last_qubit_block(const Matrix& m, int a, int b);
/// Inverse of last_qubit_block over all four blocks.
Matrix join_last_qubit_blocks(const Matrix& b00, const Matrix& b01,
                              const Matrix& b10, const Matrix& b11);
/// X0 ⊗ |0><0| + X1 ⊗ |1><1|, i.e. diag(X0, X1) in last-qubit-major order.
Matrix multiplexed(const Matrix& x0, const Matrix& x1);
/// Frobenius norm of the two off-diagonal last-qubit blocks.
double off_block_norm(const Matrix& m);

CsdResult csd(const Unitary& u);
/// Same factorization on an explicit 2m x 2m block matrix [[A,B],[C,D]].
CsdResult csd_blocks(const Matrix& u);
/// Reassembles diag(L0,L1) [[C,S],[-S,C]] diag(R0,R1) in block order.
Matrix csd_reassemble_blocks(const CsdResult& f);

EigResult eig_unitary(const Unitary& u);

/// min over phi of ||A - e^{i phi} B||_F.
double dist_phase(const Unitary& a, const Unitary& b);
double dist_phase(const Matrix& a, const Matrix& b);

/// exp(i * sum_j coeffs[j] * strings[j]) for mutually commuting strings.
Unitary expm_pauli_combo(std::span<const double> coeffs,
                         std::span<const PauliString> strings);

Matrix kron(const Matrix& a, const Matrix& b);

namespace detail {

/// Modified Gram-Schmidt over columns visited in `order`; a column that
/// collapses is replaced by a completed basis vector.
Matrix orthonormalize_columns(const Matrix& m, std::span<const Eigen::Index> order);

}  // namespace detail

}  // namespace cartan
