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

// Reference computations used only by the tests. They are written against
// textbook definitions (Kronecker products of 2x2 matrices, Pade matrix
// exponential) and deliberately avoid the library's own fast paths.

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "cartan/linalg.hpp"

namespace cartan::testing {

inline Eigen::Matrix2cd sigma(char p) {
  using C = std::complex<double>;
  Eigen::Matrix2cd m;
  switch (p) {
    case 'X':
      m << 0, 1, 1, 0;
      break;
    case 'Y':
      m << 0, C(0, -1), C(0, 1), 0;
      break;
    case 'Z':
      m << 1, 0, 0, -1;
      break;
    default:
      m.setIdentity();
  }
  return m;
}

/// Kronecker product sigma(s[0]) ⊗ sigma(s[1]) ⊗ ..., qubit 1 leftmost.
inline Eigen::MatrixXcd kron_pauli(const std::string& s) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (char ch : s) {
    Eigen::MatrixXcd next = Eigen::kroneckerProduct(m, Eigen::MatrixXcd(sigma(ch))).eval();
    m = std::move(next);
  }
  return m;
}

/// exp(i H) by Pade approximation.
inline Eigen::MatrixXcd expi(const Eigen::MatrixXcd& h) {
  const Eigen::MatrixXcd a = std::complex<double>(0, 1) * h;
  return a.exp();
}

/// Embeds a 2x2 matrix on `qubit` of an n-qubit register.
inline Eigen::MatrixXcd on_qubit(const Eigen::Matrix2cd& u, int qubit, int n) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (int k = 1; k <= n; ++k) {
    Eigen::MatrixXcd f = k == qubit ? Eigen::MatrixXcd(u) : Eigen::MatrixXcd::Identity(2, 2);
    Eigen::MatrixXcd next = Eigen::kroneckerProduct(m, f).eval();
    m = std::move(next);
  }
  return m;
}

/// CNOT as |0><0|_c ⊗ I + |1><1|_c ⊗ X_t.
inline Eigen::MatrixXcd cnot_matrix(int control, int target, int n) {
  Eigen::Matrix2cd p0 = Eigen::Matrix2cd::Zero(), p1 = Eigen::Matrix2cd::Zero();
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(1, 1), b = a;
  for (int k = 1; k <= n; ++k) {
    Eigen::MatrixXcd fa = k == control ? Eigen::MatrixXcd(p0) : Eigen::MatrixXcd::Identity(2, 2);
    Eigen::MatrixXcd fb = k == control  ? Eigen::MatrixXcd(p1)
                          : k == target ? Eigen::MatrixXcd(sigma('X'))
                                        : Eigen::MatrixXcd::Identity(2, 2);
    Eigen::MatrixXcd na = Eigen::kroneckerProduct(a, fa).eval();
    Eigen::MatrixXcd nb = Eigen::kroneckerProduct(b, fb).eval();
    a = std::move(na);
    b = std::move(nb);
  }
  return a + b;
}

/// Local invariants of a two-qubit gate (Makhlin): G1 = tr^2(m)/(16 det U),
/// G2 = (tr^2(m) - tr(m^2))/(4 det U) with m = U_B^T U_B in the magic basis.
inline std::pair<std::complex<double>, double> makhlin(const Eigen::Matrix4cd& u) {
  using C = std::complex<double>;
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix4cd q;
  q << r, 0, 0, C(0, r),  //
      0, C(0, r), r, 0,   //
      0, C(0, r), -r, 0,  //
      r, 0, 0, C(0, -r);
  const Eigen::Matrix4cd ub = q.adjoint() * u * q;
  const Eigen::Matrix4cd m = ub.transpose() * ub;
  const C det = u.determinant();
  const C tr = m.trace();
  const C g1 = tr * tr / (16.0 * det);
  const C g2 = (tr * tr - (m * m).trace()) / (4.0 * det);
  return {g1, g2.real()};
}

inline double frob(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).norm();
}

}  // namespace cartan::testing
