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

#include <array>
#include <variant>
#include <vector>

#include "cartan/linalg.hpp"
#include "cartan/pauli.hpp"

namespace cartan {

/// U = K1 exp(i sum y_coeffs) K2 with K1, K2 block-diagonal in the last qubit.
struct Level1Factors {
  Unitary k1;
  Unitary k2;
  PauliCoeffs y_coeffs;  // strings of h(n)
};

/// diag(V0, V1) = (A1 ⊗ e^{i phi z_n}) exp(i sum z_coeffs) (A2 ⊗ 1).
struct Level2Factors {
  Unitary a1;
  Unitary a2;
  double phi = 0.0;
  PauliCoeffs z_coeffs;  // strings of f(n), no z_n component
};

/// u = e^{i delta} Rz(alpha) Ry(beta) Rz(gamma) as a matrix product.
struct Su2Angles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
};

/// U = e^{i phase} (l1 ⊗ l2) exp(i(a XX + b YY + c ZZ)) (l3 ⊗ l4) with
/// pi/4 >= a >= b >= |c|.
struct Su4Factors {
  Matrix l1, l2, l3, l4;
  std::array<double, 3> coeffs{};
  double global_phase = 0.0;
};

struct DecompositionNode;

struct IdentityLeaf {};

struct Leaf1q {
  Su2Angles angles;
};

struct Leaf2q {
  Su4Factors factors;
};

/// U = e^{i gamma} K1 e^{z1} K2 e^{y} K3 e^{z2} K4, K_i = A_i ⊗ e^{i phi_i z_n}.
struct Branch {
  PauliCoeffs z1;
  PauliCoeffs y;
  PauliCoeffs z2;
  std::array<double, 4> phis{};
  std::vector<DecompositionNode> children;  // A1..A4 on qubits 1..n-1
};

struct DecompositionNode {
  int n = 0;
  double global_phase = 0.0;  // node unitary = e^{i global_phase} * body
  std::variant<IdentityLeaf, Leaf1q, Leaf2q, Branch> body;
};

Level1Factors decompose_level1(const Unitary& u);
Level2Factors decompose_level2(const Unitary& v0, const Unitary& v1);
Su4Factors decompose_su4(const Unitary& u);
Su2Angles decompose_su2(const Unitary& u);

struct DecomposeOptions {
  /// Subtrees at or above this size decompose their four children in parallel.
  int parallel_min_qubits = 5;
  /// Nodes within this phase-distance of the identity become IdentityLeaf.
  double identity_tolerance = 1e-9;
};

/// One recursion level of a special unitary on n >= 3 qubits: the three
/// exponentials, the phases of K1 and K3, and the four (n-1)-qubit blocks.
struct LevelSplit {
  PauliCoeffs z1;
  PauliCoeffs y;
  PauliCoeffs z2;
  std::array<double, 4> phis{};
  std::array<Matrix, 4> children;
};

LevelSplit split_level(const Unitary& u);

DecompositionNode decompose_full(const Unitary& u, const DecomposeOptions& options = {});

Matrix reassemble(const Level1Factors& f);
Matrix reassemble(const Level2Factors& f);
Matrix reassemble(const Su4Factors& f);
Matrix reassemble(const Su2Angles& a);
Matrix reassemble(const DecompositionNode& node);

/// Makes a 2x2 rotation matrix; shared by kak and circuit code.
Matrix rx_matrix(double theta);
Matrix ry_matrix(double theta);
Matrix rz_matrix(double theta);

}  // namespace cartan
