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

#include "cartan/kak.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <future>
#include <numbers>

#include "cartan/errors.hpp"

namespace cartan {

using std::numbers::pi;

Matrix rx_matrix(double theta) {
  Matrix m(2, 2);
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  m << c, Complex(0, -s), Complex(0, -s), c;
  return m;
}

Matrix ry_matrix(double theta) {
  Matrix m(2, 2);
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  m << c, -s, s, c;
  return m;
}

Matrix rz_matrix(double theta) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::polar(1.0, -theta / 2);
  m(1, 1) = std::polar(1.0, theta / 2);
  return m;
}

namespace {

double tol_for(Eigen::Index dim, double base) { return base * static_cast<double>(dim); }

// exp(i W ⊗ X) with W = c diag(theta) c^dag, in |q1..qn> order.
Matrix exp_w_tensor_x(const Matrix& c, std::span<const double> theta) {
  const auto m = static_cast<Eigen::Index>(theta.size());
  Eigen::VectorXcd cs(m), sn(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    cs(j) = std::cos(theta[static_cast<std::size_t>(j)]);
    sn(j) = Complex(0, std::sin(theta[static_cast<std::size_t>(j)]));
  }
  const Matrix cw = c * cs.asDiagonal() * c.adjoint();
  const Matrix sw = c * sn.asDiagonal() * c.adjoint();
  return join_last_qubit_blocks(cw, sw, sw, cw);
}

Matrix phase_diag(const Matrix& c, std::span<const double> lambda, double sign) {
  const auto m = static_cast<Eigen::Index>(lambda.size());
  Eigen::VectorXcd ph(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    ph(j) = std::polar(1.0, sign * lambda[static_cast<std::size_t>(j)]);
  }
  return c * ph.asDiagonal() * c.adjoint();
}

}  // namespace

Level1Factors decompose_level1(const Unitary& u) {
  const int n = u.qubits();
  if (n < 3) throw InvalidArgument("decompose_level1 needs n >= 3");
  const GroupDiagonalizer& dg = diagonalizer(n - 1);
  const CsdResult f = csd(u);
  const Matrix& c = dg.c.matrix();
  const Matrix ch = c.adjoint();
  const Complex i(0, 1);

  // exp(i Theta ⊗ Y) = k^dag exp(i W ⊗ X) k with k = c ⊗ diag(1, -i).
  Matrix k1 = multiplexed(f.l0.matrix() * ch, i * (f.l1.matrix() * ch));
  Matrix k2 = multiplexed(c * f.r0.matrix(), -i * (c * f.r1.matrix()));

  const PauliCoeffs w = walsh_coeffs(f.theta, dg);
  Level1Factors out{Unitary::unchecked(std::move(k1)), Unitary::unchecked(std::move(k2)),
                    {}};
  for (const auto& [alpha, value] : w) out.y_coeffs.emplace(alpha.extended(Pauli::X), value);

  const std::vector<double> theta = walsh_resum(w, dg);
  const Matrix central = exp_w_tensor_x(c, theta);
  const double res = (out.k1.matrix() * central * out.k2.matrix() - u.matrix()).norm();
  const double tol = tol_for(u.dim(), 1e-9);
  if (!(res <= tol)) throw DecompositionFailed("level-1", n, res, tol);
  return out;
}

Level2Factors decompose_level2(const Unitary& v0, const Unitary& v1) {
  if (v0.dim() != v1.dim()) throw InvalidArgument("level-2 blocks differ in size");
  const int m = v0.qubits();
  if (m < 2) throw InvalidArgument("decompose_level2 needs blocks on >= 2 qubits");
  const GroupDiagonalizer& dg = diagonalizer(m);
  const auto half = static_cast<double>(v0.dim());
  const Matrix& c = dg.c.matrix();

  const Matrix d = v0.matrix() * v1.matrix().adjoint();
  double phi = std::arg(d.determinant()) / (2.0 * half);
  const Matrix dp = std::polar(1.0, -2.0 * phi) * d;
  const EigResult eig = eig_unitary(Unitary::unchecked(dp));

  std::vector<double> lambda(eig.lambda.size());
  double sum = 0.0;
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    lambda[j] = std::arg(eig.lambda[j]) / 2.0;
    sum += lambda[j];
  }
  // det D' = 1 forces sum(lambda) to a multiple of pi; move it, and any
  // rounding residue, into phi so the z_n component vanishes.
  const double shift = sum / half;
  for (double& l : lambda) l -= shift;
  phi += shift;

  PauliCoeffs w = walsh_coeffs(lambda, dg);
  w.erase(PauliString::identity(m));
  const std::vector<double> lambda_clean = walsh_resum(w, dg);

  Level2Factors out;
  out.phi = phi;
  for (const auto& [alpha, value] : w) out.z_coeffs.emplace(alpha.extended(Pauli::Z), value);
  const Matrix a1 = eig.q.matrix() * c.adjoint();
  const Matrix a2 = phase_diag(c, lambda_clean, -1.0) * a1.adjoint() * v0.matrix() *
                    std::polar(1.0, -phi);
  out.a1 = Unitary::unchecked(a1);
  out.a2 = Unitary::unchecked(a2);

  const Matrix v1_rebuilt =
      std::polar(1.0, -phi) * a1 * phase_diag(c, lambda_clean, -1.0) * a2;
  const double res = std::hypot(
      (v1_rebuilt - v1.matrix()).norm(),
      (std::polar(1.0, phi) * a1 * phase_diag(c, lambda_clean, 1.0) * a2 - v0.matrix())
          .norm());
  const double tol = tol_for(2 * v0.dim(), 1e-9);
  if (!(res <= tol)) throw DecompositionFailed("level-2", m + 1, res, tol);
  return out;
}

Su2Angles decompose_su2(const Unitary& u) {
  if (u.dim() != 2) throw InvalidArgument("decompose_su2 needs a 2x2 unitary");
  const Matrix& m = u.matrix();
  Su2Angles a;
  a.delta = std::arg(m.determinant()) / 2.0;
  const Matrix v = std::polar(1.0, -a.delta) * m;
  const double c = std::abs(v(1, 1));
  const double s = std::abs(v(1, 0));
  a.beta = 2.0 * std::atan2(s, c);
  const double sum = c > 1e-300 ? 2.0 * std::arg(v(1, 1)) : 0.0;
  const double diff = s > 1e-300 ? 2.0 * std::arg(v(1, 0)) : 0.0;
  if (s <= 1e-14) {
    a.alpha = sum;
    a.gamma = 0.0;
  } else {
    a.alpha = (sum + diff) / 2.0;
    a.gamma = (sum - diff) / 2.0;
  }
  const double res = (reassemble(a) - m).norm();
  if (!(res <= 1e-12)) throw DecompositionFailed("su2", 1, res, 1e-12);
  return a;
}

namespace {

Matrix magic_basis() {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i(0, r);
  Matrix b(4, 4);
  b << r, 0, 0, i,  //
      0, i, r, 0,   //
      0, i, -r, 0,  //
      r, 0, 0, -i;
  return b;
}

Matrix pauli2(char p) {
  Matrix m(2, 2);
  switch (p) {
    case 'X':
      m << 0, 1, 1, 0;
      break;
    case 'Y':
      m << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    case 'Z':
      m << 1, 0, 0, -1;
      break;
    default:
      m = Matrix::Identity(2, 2);
  }
  return m;
}

// Splits K = L1 ⊗ L2 using its largest 2x2 block.
std::pair<Matrix, Matrix> kron_factor(const Matrix& k) {
  int bi = 0, bj = 0;
  double best = -1.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double nrm = k.block(2 * i, 2 * j, 2, 2).norm();
      if (nrm > best) {
        best = nrm;
        bi = i;
        bj = j;
      }
    }
  }
  const Matrix blk = k.block(2 * bi, 2 * bj, 2, 2);
  Matrix l2 = blk / std::sqrt(blk.determinant());
  Matrix l1(2, 2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      l1(i, j) = (l2.adjoint() * k.block(2 * i, 2 * j, 2, 2)).trace() / 2.0;
    }
  }
  return {l1, l2};
}

struct Canonicalizer {
  Su4Factors& f;

  // A(current) = V^dag A(next) V for V = v1 ⊗ v2.
  void conjugate(const Matrix& v1, const Matrix& v2) {
    f.l1 = f.l1 * v1.adjoint();
    f.l2 = f.l2 * v2.adjoint();
    f.l3 = v1 * f.l3;
    f.l4 = v2 * f.l4;
  }

  void reduce(int axis) {
    double& x = f.coeffs[static_cast<std::size_t>(axis)];
    const auto k = static_cast<long>(std::floor((x + pi / 4) / (pi / 2)));
    if (k == 0) return;
    x -= static_cast<double>(k) * pi / 2;
    // exp(i k pi/2 PP) = i^k (PP)^k lands on the right-hand locals.
    f.global_phase += static_cast<double>(k) * pi / 2;
    if (k % 2 != 0) {
      const Matrix p = pauli2("XYZ"[axis]);
      f.l3 = p * f.l3;
      f.l4 = p * f.l4;
    }
  }

  void swap(int x, int y) {
    auto& c = f.coeffs;
    std::swap(c[static_cast<std::size_t>(x)], c[static_cast<std::size_t>(y)]);
    Matrix v;
    if (x + y == 1) {
      v = Matrix::Identity(2, 2);
      v(1, 1) = Complex(0, 1);  // S: XX <-> YY
    } else if (x + y == 3) {
      v = rx_matrix(pi / 2);  // YY <-> ZZ
    } else {
      v = ry_matrix(pi / 2);  // XX <-> ZZ
    }
    conjugate(v, v);
  }

  // Negates the two coefficients other than `keep`.
  void flip_pair(int keep) {
    auto& c = f.coeffs;
    for (int a = 0; a < 3; ++a) {
      if (a != keep) c[static_cast<std::size_t>(a)] = -c[static_cast<std::size_t>(a)];
    }
    conjugate(pauli2("XYZ"[keep]), Matrix::Identity(2, 2));
  }

  void run() {
    for (int a = 0; a < 3; ++a) reduce(a);
    auto& c = f.coeffs;
    auto mag = [&](int a) { return std::abs(c[static_cast<std::size_t>(a)]); };
    if (mag(0) < mag(1)) swap(0, 1);
    if (mag(1) < mag(2)) swap(1, 2);
    if (mag(0) < mag(1)) swap(0, 1);
    if (c[0] < 0) flip_pair(1);  // Y ⊗ I negates XX and ZZ
    if (c[1] < 0) flip_pair(0);  // X ⊗ I negates YY and ZZ
  }
};

}  // namespace

Su4Factors decompose_su4(const Unitary& u) {
  if (u.dim() != 4) throw InvalidArgument("decompose_su4 needs a 4x4 unitary");
  static const Matrix b = magic_basis();
  const double gamma0 = std::arg(u.matrix().determinant()) / 4.0;
  const Matrix us = std::polar(1.0, -gamma0) * u.matrix();
  const Matrix ub = b.adjoint() * us * b;
  const Matrix m = ub.transpose() * ub;
  const Eigen::Matrix4d re = m.real();
  const Eigen::Matrix4d im = m.imag();

  // M is symmetric unitary, so Re M and Im M commute and share a real
  // orthogonal eigenbasis; diagonalize a generic mix of the two.
  Eigen::Matrix4d best_p;
  double best_off = std::numeric_limits<double>::infinity();
  for (double beta : {0.5772156649015329, 1.4142135623730951, -2.2360679774997897,
                      0.3183098861837907, 3.1415926535897932}) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(re + beta * im);
    const Eigen::Matrix4d p = es.eigenvectors();
    Matrix dm = p.transpose().cast<Complex>() * m * p.cast<Complex>();
    dm.diagonal().setZero();
    const double off = dm.norm();
    if (off < best_off) {
      best_off = off;
      best_p = p;
    }
    if (best_off < 1e-13) break;
  }
  if (best_p.determinant() < 0) best_p.col(0) *= -1.0;
  const Matrix p = best_p.cast<Complex>();
  const Eigen::Vector4cd d2 = (p.transpose() * m * p).diagonal();

  std::array<double, 4> theta{};
  Eigen::Vector4cd dinv;
  for (int j = 0; j < 4; ++j) {
    theta[static_cast<std::size_t>(j)] = std::arg(d2(j)) / 2.0;
    dinv(j) = std::polar(1.0, -theta[static_cast<std::size_t>(j)]);
  }
  Eigen::Matrix4d o1 = (ub * p * dinv.asDiagonal()).real();
  if (o1.determinant() < 0) {
    o1.col(0) *= -1.0;
    theta[0] += pi;
  }

  // B^dag P B is diagonal for P in {II, XX, YY, ZZ}; read the coefficients off
  // by projecting theta onto those +-1 patterns.
  Su4Factors f;
  const char* names[] = {"II", "XX", "YY", "ZZ"};
  double coeff[4];
  for (int a = 0; a < 4; ++a) {
    const Matrix pp = kron(pauli2(names[a][0]), pauli2(names[a][1]));
    const Matrix diag = b.adjoint() * pp * b;
    double acc = 0.0;
    for (int j = 0; j < 4; ++j) acc += diag(j, j).real() * theta[static_cast<std::size_t>(j)];
    coeff[a] = acc / 4.0;
  }
  f.global_phase = gamma0 + coeff[0];
  f.coeffs = {coeff[1], coeff[2], coeff[3]};
  std::tie(f.l1, f.l2) = kron_factor(b * o1.cast<Complex>() * b.adjoint());
  std::tie(f.l3, f.l4) = kron_factor(b * p.transpose() * b.adjoint());

  Canonicalizer{f}.run();

  const double res = (reassemble(f) - u.matrix()).norm();
  const double tol = tol_for(4, 1e-10);
  if (!(res <= tol)) throw DecompositionFailed("su4", 2, res, tol);
  return f;
}

Matrix reassemble(const Su2Angles& a) {
  return std::polar(1.0, a.delta) * rz_matrix(a.alpha) * ry_matrix(a.beta) *
         rz_matrix(a.gamma);
}

Matrix reassemble(const Su4Factors& f) {
  const std::vector<double> c(f.coeffs.begin(), f.coeffs.end());
  const std::vector<PauliString> s = {PauliString::parse("XX"), PauliString::parse("YY"),
                                      PauliString::parse("ZZ")};
  return std::polar(1.0, f.global_phase) * kron(f.l1, f.l2) *
         expm_pauli_combo(c, s).matrix() * kron(f.l3, f.l4);
}

Matrix reassemble(const Level1Factors& f) {
  const int n = f.k1.qubits();
  return f.k1.matrix() * expm_coeffs(f.y_coeffs, n).matrix() * f.k2.matrix();
}

Matrix reassemble(const Level2Factors& f) {
  const int n = f.a1.qubits() + 1;
  Matrix b(2, 2);
  b << std::polar(1.0, f.phi), 0, 0, std::polar(1.0, -f.phi);
  return kron(f.a1.matrix(), b) * expm_coeffs(f.z_coeffs, n).matrix() *
         kron(f.a2.matrix(), Matrix::Identity(2, 2));
}

Matrix reassemble(const DecompositionNode& node) {
  const Eigen::Index dim = Eigen::Index{1} << node.n;
  Matrix body = std::visit(
      [&](const auto& b) -> Matrix {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, IdentityLeaf>) {
          return Matrix::Identity(dim, dim);
        } else if constexpr (std::is_same_v<T, Leaf1q>) {
          return reassemble(b.angles);
        } else if constexpr (std::is_same_v<T, Leaf2q>) {
          return reassemble(b.factors);
        } else {
          const Matrix id2 = Matrix::Identity(2, 2);
          auto k = [&](std::size_t i) {
            Matrix bz(2, 2);
            bz << std::polar(1.0, b.phis[i]), 0, 0, std::polar(1.0, -b.phis[i]);
            return kron(reassemble(b.children.at(i)), bz);
          };
          return k(0) * expm_coeffs(b.z1, node.n).matrix() * k(1) *
                 expm_coeffs(b.y, node.n).matrix() * k(2) *
                 expm_coeffs(b.z2, node.n).matrix() * k(3);
        }
      },
      node.body);
  return std::polar(1.0, node.global_phase) * body;
}

LevelSplit split_level(const Unitary& u) {
  const Level1Factors l1 = decompose_level1(u);
  const Level2Factors left =
      decompose_level2(Unitary::unchecked(last_qubit_block(l1.k1.matrix(), 0, 0)),
                       Unitary::unchecked(last_qubit_block(l1.k1.matrix(), 1, 1)));
  const Level2Factors right =
      decompose_level2(Unitary::unchecked(last_qubit_block(l1.k2.matrix(), 0, 0)),
                       Unitary::unchecked(last_qubit_block(l1.k2.matrix(), 1, 1)));
  LevelSplit out;
  out.z1 = left.z_coeffs;
  out.y = l1.y_coeffs;
  out.z2 = right.z_coeffs;
  out.phis = {left.phi, 0.0, right.phi, 0.0};
  out.children = {left.a1.matrix(), left.a2.matrix(), right.a1.matrix(), right.a2.matrix()};
  return out;
}

namespace {

DecompositionNode decompose_node(const Matrix& u, int n, const DecomposeOptions& opt) {
  DecompositionNode node;
  node.n = n;
  const auto dim = static_cast<double>(u.rows());
  if (n >= 2) {
    const Complex tr = u.trace();
    const double dist = dist_phase(u, Matrix::Identity(u.rows(), u.cols()));
    if (dist <= opt.identity_tolerance) {
      node.global_phase = std::abs(tr) > 0 ? std::arg(tr) : 0.0;
      node.body = IdentityLeaf{};
      return node;
    }
  }
  node.global_phase = std::arg(u.determinant()) / dim;
  const Matrix us = std::polar(1.0, -node.global_phase) * u;
  if (n == 1) {
    node.body = Leaf1q{decompose_su2(Unitary::unchecked(us))};
    return node;
  }
  if (n == 2) {
    node.body = Leaf2q{decompose_su4(Unitary::unchecked(us))};
    return node;
  }
  LevelSplit split = split_level(Unitary::unchecked(us));
  Branch br;
  br.z1 = std::move(split.z1);
  br.y = std::move(split.y);
  br.z2 = std::move(split.z2);
  br.phis = split.phis;
  const Matrix* parts[4] = {&split.children[0], &split.children[1], &split.children[2],
                            &split.children[3]};
  br.children.resize(4);
  if (n >= opt.parallel_min_qubits) {
    std::vector<std::future<DecompositionNode>> jobs;
    for (int i = 1; i < 4; ++i) {
      jobs.push_back(std::async(std::launch::async, decompose_node, std::cref(*parts[i]),
                                n - 1, std::cref(opt)));
    }
    br.children[0] = decompose_node(*parts[0], n - 1, opt);
    for (int i = 1; i < 4; ++i) br.children[static_cast<std::size_t>(i)] = jobs[static_cast<std::size_t>(i - 1)].get();
  } else {
    for (int i = 0; i < 4; ++i) {
      br.children[static_cast<std::size_t>(i)] = decompose_node(*parts[i], n - 1, opt);
    }
  }
  node.body = std::move(br);
  return node;
}

}  // namespace

DecompositionNode decompose_full(const Unitary& u, const DecomposeOptions& options) {
  if (u.qubits() < 1) throw InvalidArgument("decompose_full needs n >= 1");
  const double bound = 1e-9 * static_cast<double>(u.dim());
  if (const double r = u.unitarity_residual(); !(r <= bound)) {
    throw NumericalValidationError("decompose_full input is not unitary (residual " +
                                   std::to_string(r) + ")");
  }
  return decompose_node(u.matrix(), u.qubits(), options);
}

}  // namespace cartan
