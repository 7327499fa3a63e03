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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "cartan/errors.hpp"
#include "cartan/linalg.hpp"
#include "test_support.hpp"

namespace cartan {
namespace {

using std::numbers::pi;
using testing::expi;
using testing::kron_pauli;

TEST(HaarUnitary, UnitaryWithinToleranceAcrossSeeds) {
  for (int n = 1; n <= 4; ++n) {
    for (std::uint64_t seed = 0; seed < 250; ++seed) {
      const Unitary u = haar_unitary(n, seed);
      ASSERT_LE(u.unitarity_residual(), 1e-12 * static_cast<double>(u.dim()))
          << "n=" << n << " seed=" << seed;
    }
  }
}

TEST(HaarUnitary, DeterministicInSeed) {
  const Unitary a = haar_unitary(3, 0);
  const Unitary b = haar_unitary(3, 0);
  EXPECT_TRUE(a.matrix() == b.matrix());
  EXPECT_FALSE(a.matrix() == haar_unitary(3, 1).matrix());
}

TEST(HaarUnitary, SpecialUnitary) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Complex det = haar_unitary(2, seed).matrix().determinant();
    EXPECT_NEAR(std::abs(det - Complex(1, 0)), 0.0, 1e-10);
  }
}

TEST(HaarUnitary, RejectsNonPositiveQubits) {
  EXPECT_THROW(haar_unitary(0, 1), InvalidArgument);
  EXPECT_THROW(haar_unitary(-2, 1), InvalidArgument);
}

TEST(UnitaryType, ValidatesConstruction) {
  Matrix m = Matrix::Identity(4, 4);
  EXPECT_NO_THROW(Unitary{m});
  m(0, 0) = 1.001;
  EXPECT_THROW(Unitary{m}, NumericalValidationError);
  EXPECT_THROW(Unitary{Matrix::Identity(3, 3)}, InvalidArgument);
  EXPECT_EQ(Unitary::identity(3).qubits(), 3);
}

TEST(Reorder, TwoQubitPermutation) {
  const auto p = reorder_last_qubit_major(2);
  EXPECT_EQ(p, (std::vector<std::size_t>{0, 2, 1, 3}));
  EXPECT_EQ(reorder_last_qubit_major(1), (std::vector<std::size_t>{0, 1}));
}

TEST(Reorder, InvolutionForTwoQubitsAndInverseRoundTripBeyond) {
  const auto p2 = reorder_last_qubit_major(2);
  for (std::size_t i = 0; i < p2.size(); ++i) EXPECT_EQ(p2[p2[i]], i);
  for (int n = 2; n <= 6; ++n) {
    const auto p = reorder_last_qubit_major(n);
    const auto inv = invert_permutation(p);
    for (std::size_t i = 0; i < p.size(); ++i) EXPECT_EQ(inv[p[i]], i);
    // New index i has q_n as its leading bit.
    const std::size_t half = p.size() / 2;
    for (std::size_t i = 0; i < p.size(); ++i) EXPECT_EQ(p[i] & 1u, i / half);
  }
}

TEST(Reorder, BlocksMatchLastQubitBlocks) {
  const Unitary u = haar_unitary(3, 5);
  const Matrix r = permute(u.matrix(), reorder_last_qubit_major(3));
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      EXPECT_LT((r.block(4 * a, 4 * b, 4, 4) - last_qubit_block(u.matrix(), a, b)).norm(),
                1e-15);
    }
  }
}

CsdResult csd_of_blocks(const Matrix& m) { return csd_blocks(m); }

void expect_csd_ok(const Matrix& m, const CsdResult& f) {
  const double d = static_cast<double>(m.rows());
  EXPECT_LE((csd_reassemble_blocks(f) - m).norm(), 1e-10 * d);
  for (const Unitary* x : {&f.l0, &f.l1, &f.r0, &f.r1}) {
    EXPECT_LE(x->unitarity_residual(), 1e-12 * d);
  }
  for (std::size_t j = 0; j < f.theta.size(); ++j) {
    EXPECT_GE(f.theta[j], 0.0);
    EXPECT_LE(f.theta[j], pi / 2);
    if (j > 0) EXPECT_LE(f.theta[j - 1], f.theta[j]);
  }
}

TEST(Csd, BlockDiagonalInputHasZeroAngles) {
  const Matrix a = haar_unitary(2, 1).matrix();
  const Matrix b = haar_unitary(2, 2).matrix();
  Matrix m = Matrix::Zero(8, 8);
  m.topLeftCorner(4, 4) = a;
  m.bottomRightCorner(4, 4) = b;
  const CsdResult f = csd_of_blocks(m);
  expect_csd_ok(m, f);
  for (double t : f.theta) EXPECT_NEAR(t, 0.0, 1e-10);
}

TEST(Csd, CentralElementHasQuarterPiAngles) {
  const double r = 1.0 / std::sqrt(2.0);
  Matrix m(8, 8);
  m << Matrix::Identity(4, 4) * r, Matrix::Identity(4, 4) * r, -Matrix::Identity(4, 4) * r,
      Matrix::Identity(4, 4) * r;
  const CsdResult f = csd_of_blocks(m);
  expect_csd_ok(m, f);
  for (double t : f.theta) EXPECT_NEAR(t, pi / 4, 1e-12);
  for (const Unitary* x : {&f.l0, &f.l1, &f.r0, &f.r1}) {
    Matrix off = x->matrix();
    off.diagonal().setZero();
    EXPECT_LT(off.norm(), 1e-12);
  }
}

TEST(Csd, HaarReassembly) {
  for (int n = 2; n <= 6; ++n) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const Unitary u = haar_unitary(n, seed);
      const Matrix r = permute(u.matrix(), reorder_last_qubit_major(n));
      expect_csd_ok(r, csd(u));
    }
  }
}

TEST(Csd, DegenerateAndClusteredAngles) {
  // Angles clustered at 0, pi/2 and repeated values stress the completion.
  const std::vector<double> thetas = {0.0, 0.0, 1e-9, pi / 2, pi / 2 - 1e-10, 0.7, 0.7, 0.7};
  Matrix c = Matrix::Zero(8, 8), s = Matrix::Zero(8, 8);
  for (int j = 0; j < 8; ++j) {
    c(j, j) = std::cos(thetas[static_cast<std::size_t>(j)]);
    s(j, j) = std::sin(thetas[static_cast<std::size_t>(j)]);
  }
  Matrix cs(16, 16);
  cs << c, s, -s, c;
  const Matrix left = multiplexed(haar_unitary(3, 7).matrix(), haar_unitary(3, 8).matrix());
  const Matrix right = multiplexed(haar_unitary(3, 9).matrix(), haar_unitary(3, 10).matrix());
  const auto p = reorder_last_qubit_major(4);
  const Matrix m = permute(left, p) * cs * permute(right, p);
  const CsdResult f = csd_of_blocks(m);
  expect_csd_ok(m, f);
  std::vector<double> sorted = thetas;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t j = 0; j < sorted.size(); ++j) EXPECT_NEAR(f.theta[j], sorted[j], 1e-8);
}

TEST(Csd, RejectsNonUnitary) {
  Matrix m = haar_unitary(3, 1).matrix();
  m(0, 0) += 0.1;
  EXPECT_THROW(csd(Unitary::unchecked(m)), NumericalValidationError);
}

void expect_eig_ok(const Matrix& m, const EigResult& e) {
  const double d = static_cast<double>(m.rows());
  Eigen::VectorXcd l(m.rows());
  for (Eigen::Index j = 0; j < m.rows(); ++j) {
    l(j) = e.lambda[static_cast<std::size_t>(j)];
    EXPECT_NEAR(std::abs(l(j)), 1.0, 1e-10);
  }
  EXPECT_LE((e.q.matrix() * l.asDiagonal() * e.q.matrix().adjoint() - m).norm(), 1e-10 * d);
  EXPECT_LE(e.q.unitarity_residual(), 1e-12 * d);
}

TEST(EigUnitary, Identity) {
  const EigResult e = eig_unitary(Unitary::identity(2));
  for (Complex l : e.lambda) EXPECT_NEAR(std::abs(l - Complex(1, 0)), 0.0, 1e-14);
}

TEST(EigUnitary, DiagonalSigns) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1;
  m(1, 1) = -1;
  const EigResult e = eig_unitary(Unitary(m));
  expect_eig_ok(m, e);
  std::vector<double> re{e.lambda[0].real(), e.lambda[1].real()};
  std::sort(re.begin(), re.end());
  EXPECT_NEAR(re[0], -1.0, 1e-14);
  EXPECT_NEAR(re[1], 1.0, 1e-14);
  for (int j = 0; j < 2; ++j) {
    const double big = std::max(std::abs(e.q(0, j)), std::abs(e.q(1, j)));
    EXPECT_NEAR(big, 1.0, 1e-12);
  }
}

TEST(EigUnitary, HaarReassembly) {
  for (int n = 1; n <= 5; ++n) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Unitary u = haar_unitary(n, seed);
      expect_eig_ok(u.matrix(), eig_unitary(u));
    }
  }
}

TEST(EigUnitary, HeavilyDegenerateSpectrum) {
  // Conjugated diagonal with eigenvalues of multiplicity 3 and 5, plus a pair
  // whose phases sum to twice a mixing angle candidate.
  Eigen::VectorXcd d(8);
  d << std::polar(1.0, 0.3), std::polar(1.0, 0.3), std::polar(1.0, 0.3), std::polar(1.0, -2.0),
      std::polar(1.0, -2.0), std::polar(1.0, -2.0), std::polar(1.0, -2.0),
      std::polar(1.0, -2.0);
  const Matrix v = haar_unitary(3, 11).matrix();
  const Matrix m = v * d.asDiagonal() * v.adjoint();
  expect_eig_ok(m, eig_unitary(Unitary::unchecked(m)));
  Eigen::VectorXcd d2(4);
  d2 << std::polar(1.0, 0.1), std::polar(1.0, 2 * 0.5772156649015329 - 0.1), 1.0, -1.0;
  const Matrix v2 = haar_unitary(2, 12).matrix();
  const Matrix m2 = v2 * d2.asDiagonal() * v2.adjoint();
  expect_eig_ok(m2, eig_unitary(Unitary::unchecked(m2)));
}

TEST(DistPhase, Basics) {
  const Unitary u = haar_unitary(3, 4);
  EXPECT_NEAR(dist_phase(u, u), 0.0, 1e-14);
  const Matrix shifted = std::polar(1.0, pi / 3) * u.matrix();
  EXPECT_NEAR(dist_phase(u.matrix(), shifted), 0.0, 1e-12);
  Matrix z = Matrix::Identity(2, 2);
  z(1, 1) = -1;
  EXPECT_NEAR(dist_phase(Matrix::Identity(2, 2), z), 2.0, 1e-14);
  EXPECT_THROW(dist_phase(Matrix::Identity(2, 2), Matrix::Identity(4, 4)), InvalidArgument);
}

TEST(DistPhase, Pseudometric) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const Matrix a = haar_unitary(2, 3 * s).matrix();
    const Matrix b = haar_unitary(2, 3 * s + 1).matrix();
    const Matrix c = haar_unitary(2, 3 * s + 2).matrix();
    EXPECT_NEAR(dist_phase(a, b), dist_phase(b, a), 1e-12);
    EXPECT_LE(dist_phase(a, c), dist_phase(a, b) + dist_phase(b, c) + 1e-9);
    // Agrees with the closed form sqrt(2 dim - 2 |tr(A^dag B)|).
    const double closed =
        std::sqrt(std::max(0.0, 8.0 - 2.0 * std::abs((a.adjoint() * b).trace())));
    EXPECT_NEAR(dist_phase(a, b), closed, 1e-9);
  }
}

TEST(ExpmPauliCombo, ZeroCoefficientsGiveIdentity) {
  const std::vector<PauliString> s = {PauliString::parse("XXI"), PauliString::parse("ZZX")};
  const std::vector<double> c = {0.0, 0.0};
  EXPECT_LT((expm_pauli_combo(c, s).matrix() - Matrix::Identity(8, 8)).norm(), 1e-14);
}

TEST(ExpmPauliCombo, SingleXXQuarterPi) {
  const std::vector<PauliString> s = {PauliString::parse("XX")};
  const std::vector<double> c = {pi / 4};
  const Matrix m = expm_pauli_combo(c, s).matrix();
  const double r = std::cos(pi / 4);
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(std::abs(m(i, i) - Complex(r, 0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(m(i, 3 - i) - Complex(0, r)), 0.0, 1e-14);
  }
}

TEST(ExpmPauliCombo, XXPlusYYBlocks) {
  const double a = 0.37, b = -1.21;
  const std::vector<PauliString> s = {PauliString::parse("XX"), PauliString::parse("YY")};
  const std::vector<double> c = {a, b};
  const Matrix m = expm_pauli_combo(c, s).matrix();
  // span{|00>,|11>} carries a - b, span{|01>,|10>} carries a + b.
  EXPECT_NEAR(std::abs(m(0, 0) - std::cos(a - b)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(m(0, 3) - Complex(0, std::sin(a - b))), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(m(1, 1) - std::cos(a + b)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(m(1, 2) - Complex(0, std::sin(a + b))), 0.0, 1e-14);
}

TEST(ExpmPauliCombo, MatchesPadeAndInverts) {
  const std::vector<PauliString> s = {PauliString::parse("XXXI"), PauliString::parse("YYXI"),
                                      PauliString::parse("ZZIX"), PauliString::parse("IIXX")};
  const std::vector<double> c = {0.3, -0.8, 1.7, 0.05};
  std::vector<double> neg(c.size());
  std::transform(c.begin(), c.end(), neg.begin(), [](double x) { return -x; });
  Matrix h = Matrix::Zero(16, 16);
  for (std::size_t j = 0; j < s.size(); ++j) h += c[j] * kron_pauli(s[j].str());
  const Matrix e = expm_pauli_combo(c, s).matrix();
  EXPECT_LT((e - expi(h)).norm(), 1e-12);
  EXPECT_LT((e * expm_pauli_combo(neg, s).matrix() - Matrix::Identity(16, 16)).norm(),
            1e-11 * 16);
}

TEST(ExpmPauliCombo, RejectsNonCommuting) {
  const std::vector<PauliString> s = {PauliString::parse("XI"), PauliString::parse("ZI")};
  const std::vector<double> c = {0.1, 0.2};
  EXPECT_THROW(expm_pauli_combo(c, s), InvalidArgument);
}

}  // namespace
}  // namespace cartan
