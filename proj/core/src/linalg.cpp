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

#include "cartan/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "cartan/errors.hpp"

namespace cartan {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void require_square_pow2(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw InvalidArgument("matrix must be square");
  }
  qubits_for_dim(m.rows());
}

}  // namespace

int qubits_for_dim(Eigen::Index dim) {
  if (dim < 1 || (dim & (dim - 1)) != 0) {
    throw InvalidArgument("dimension " + std::to_string(dim) +
                          " is not a power of two");
  }
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return n;
}

double unitarity_residual(const Matrix& m) {
  return (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).norm();
}

Unitary::Unitary(Matrix m) {
  *this = checked(std::move(m), kUnitarityTolerance);
}

Unitary Unitary::checked(Matrix m, double tol_per_dim) {
  require_square_pow2(m);
  const double res = cartan::unitarity_residual(m);
  const double bound = tol_per_dim * static_cast<double>(m.rows());
  if (!(res <= bound)) {
    throw NumericalValidationError("matrix is not unitary: ||U^dag U - I|| = " +
                                   std::to_string(res) + " > " +
                                   std::to_string(bound));
  }
  const int n = qubits_for_dim(m.rows());
  return Unitary(std::move(m), n);
}

Unitary Unitary::unchecked(Matrix m) {
  require_square_pow2(m);
  const int n = qubits_for_dim(m.rows());
  return Unitary(std::move(m), n);
}

Unitary Unitary::identity(int qubits) {
  if (qubits < 0 || qubits > 16) throw InvalidArgument("qubit count out of range");
  const Eigen::Index d = Eigen::Index{1} << qubits;
  return Unitary(Matrix::Identity(d, d), qubits);
}

Unitary Unitary::adjoint() const { return Unitary(m_.adjoint(), qubits_); }

double Unitary::unitarity_residual() const {
  return cartan::unitarity_residual(m_);
}

Unitary operator*(const Unitary& a, const Unitary& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("dimension mismatch in product");
  return Unitary(a.m_ * b.m_, a.qubits_);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Unitary haar_unitary(int qubits, std::uint64_t seed) {
  if (qubits <= 0) throw InvalidArgument("haar_unitary needs at least one qubit");
  if (qubits > 12) throw InvalidArgument("haar_unitary supports at most 12 qubits");
  const Eigen::Index d = Eigen::Index{1} << qubits;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix z(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = Complex(re, im) * kInvSqrt2;
    }
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0.0) q.col(j) *= rjj / mag;
  }
  const Complex det = q.determinant();
  q *= std::polar(1.0, -std::arg(det) / static_cast<double>(d));
  return Unitary::unchecked(std::move(q));
}

std::vector<std::size_t> reorder_last_qubit_major(int qubits) {
  if (qubits < 1) throw InvalidArgument("reorder needs at least one qubit");
  const std::size_t d = std::size_t{1} << qubits;
  const std::size_t half = d >> 1;
  std::vector<std::size_t> perm(d);
  for (std::size_t i = 0; i < d; ++i) {
    const std::size_t last = i / half;  // leading bit of the new order is q_n
    perm[i] = ((i % half) << 1) | last;
  }
  return perm;
}

std::vector<std::size_t> invert_permutation(std::span<const std::size_t> perm) {
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv.at(perm[i]) = i;
  return inv;
}

Matrix permute(const Matrix& m, std::span<const std::size_t> perm) {
  if (static_cast<Eigen::Index>(perm.size()) != m.rows() || m.rows() != m.cols()) {
    throw InvalidArgument("permutation size does not match matrix");
  }
  const Eigen::Index d = m.rows();
  Matrix out(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      out(i, j) = m(static_cast<Eigen::Index>(perm[i]),
                    static_cast<Eigen::Index>(perm[j]));
    }
  }
  return out;
}

Matrix last_qubit_block(const Matrix& m, int a, int b) {
  const Eigen::Index half = m.rows() / 2;
  Matrix out(half, half);
  for (Eigen::Index i = 0; i < half; ++i) {
    for (Eigen::Index j = 0; j < half; ++j) out(i, j) = m(2 * i + a, 2 * j + b);
  }
  return out;
}

Matrix join_last_qubit_blocks(const Matrix& b00, const Matrix& b01,
                              const Matrix& b10, const Matrix& b11) {
  const Eigen::Index half = b00.rows();
  Matrix out(2 * half, 2 * half);
  for (Eigen::Index i = 0; i < half; ++i) {
    for (Eigen::Index j = 0; j < half; ++j) {
      out(2 * i, 2 * j) = b00(i, j);
      out(2 * i, 2 * j + 1) = b01(i, j);
      out(2 * i + 1, 2 * j) = b10(i, j);
      out(2 * i + 1, 2 * j + 1) = b11(i, j);
    }
  }
  return out;
}

Matrix multiplexed(const Matrix& x0, const Matrix& x1) {
  const Matrix zero = Matrix::Zero(x0.rows(), x0.cols());
  return join_last_qubit_blocks(x0, zero, zero, x1);
}

double off_block_norm(const Matrix& m) {
  return std::hypot(last_qubit_block(m, 0, 1).norm(),
                    last_qubit_block(m, 1, 0).norm());
}

namespace detail {

Matrix orthonormalize_columns(const Matrix& m,
                              std::span<const Eigen::Index> order) {
  const Eigen::Index rows = m.rows();
  Matrix out = m;
  std::vector<Eigen::Index> done;
  done.reserve(order.size());
  Eigen::Index next_fill = 0;
  for (Eigen::Index col : order) {
    Eigen::VectorXcd v = m.col(col);
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index prev : done) v -= out.col(prev) * out.col(prev).dot(v);
    }
    double norm = v.norm();
    while (norm < 0.5) {
      if (next_fill >= rows) {
        throw NumericalValidationError("orthonormal completion ran out of vectors");
      }
      v = Eigen::VectorXcd::Unit(rows, next_fill++);
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index prev : done) v -= out.col(prev) * out.col(prev).dot(v);
      }
      norm = v.norm();
    }
    out.col(col) = v / norm;
    done.push_back(col);
  }
  return out;
}

}  // namespace detail

// The first block column [A; C] is factored as [L0 C R0; -L1 S R0] using the
// SVD of A. Where c_j > 1/sqrt2 the lower factor is recovered from a second SVD
// of C restricted to that invariant subspace, so no column is ever divided by
// a small sine. R1 follows from the second block column without division:
// R1 = S L0^dag B + C L1^dag D.
CsdResult csd_blocks(const Matrix& u) {
  if (u.rows() != u.cols() || u.rows() < 2 || u.rows() % 2 != 0) {
    throw InvalidArgument("csd needs an even square matrix");
  }
  const double bound = 1e-9 * static_cast<double>(u.rows());
  if (const double res = unitarity_residual(u); !(res <= bound)) {
    throw NumericalValidationError("csd input is not unitary (residual " +
                                   std::to_string(res) + ")");
  }
  const Eigen::Index m = u.rows() / 2;
  const Matrix a = u.topLeftCorner(m, m);
  const Matrix b = u.topRightCorner(m, m);
  const Matrix c = u.bottomLeftCorner(m, m);
  const Matrix d = u.bottomRightCorner(m, m);

  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::VectorXd cosv = svd.singularValues().cwiseMin(1.0);
  Matrix l0 = svd.matrixU();
  Matrix v = svd.matrixV();
  Matrix l1(m, m);
  Eigen::VectorXd sinv(m);

  Eigen::Index nbad = 0;
  while (nbad < m && cosv(nbad) > kInvSqrt2) ++nbad;

  for (Eigen::Index j = nbad; j < m; ++j) {
    sinv(j) = std::sqrt(std::max(0.0, 1.0 - cosv(j) * cosv(j)));
    l1.col(j) = -(c * v.col(j)) / sinv(j);
  }
  if (nbad > 0) {
    const Matrix t = c * v.leftCols(nbad);
    Eigen::JacobiSVD<Matrix> svd_t(t, Eigen::ComputeThinU | Eigen::ComputeThinV);
    v.leftCols(nbad) = (v.leftCols(nbad) * svd_t.matrixV()).eval();
    for (Eigen::Index j = 0; j < nbad; ++j) {
      sinv(j) = std::min(1.0, svd_t.singularValues()(j));
      cosv(j) = std::sqrt(std::max(0.0, 1.0 - sinv(j) * sinv(j)));
      l1.col(j) = -svd_t.matrixU().col(j);
      l0.col(j) = (a * v.col(j)) / cosv(j);
    }
  }

  // Well-determined columns first; collapsing ones get completed.
  std::vector<Eigen::Index> order;
  for (Eigen::Index j = nbad; j < m; ++j) order.push_back(j);
  for (Eigen::Index j = 0; j < nbad; ++j) order.push_back(j);
  l0 = detail::orthonormalize_columns(l0, order);
  l1 = detail::orthonormalize_columns(l1, order);

  std::vector<double> theta(static_cast<std::size_t>(m));
  for (Eigen::Index j = 0; j < m; ++j) {
    theta[static_cast<std::size_t>(j)] = std::atan2(sinv(j), cosv(j));
  }
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(m));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index x, Eigen::Index y) {
    return theta[static_cast<std::size_t>(x)] < theta[static_cast<std::size_t>(y)];
  });
  Matrix l0s(m, m), l1s(m, m), vs(m, m);
  std::vector<double> theta_sorted(static_cast<std::size_t>(m));
  for (Eigen::Index k = 0; k < m; ++k) {
    const Eigen::Index j = idx[static_cast<std::size_t>(k)];
    l0s.col(k) = l0.col(j);
    l1s.col(k) = l1.col(j);
    vs.col(k) = v.col(j);
    theta_sorted[static_cast<std::size_t>(k)] = theta[static_cast<std::size_t>(j)];
  }
  Eigen::VectorXd cs(m), sn(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    cs(k) = std::cos(theta_sorted[static_cast<std::size_t>(k)]);
    sn(k) = std::sin(theta_sorted[static_cast<std::size_t>(k)]);
  }
  Matrix r1 = sn.asDiagonal() * (l0s.adjoint() * b) +
              cs.asDiagonal() * (l1s.adjoint() * d);

  CsdResult out{Unitary::unchecked(std::move(l0s)), Unitary::unchecked(std::move(l1s)),
                Unitary::unchecked(vs.adjoint()), Unitary::unchecked(std::move(r1)),
                std::move(theta_sorted)};
  return out;
}

Matrix csd_reassemble_blocks(const CsdResult& f) {
  const Eigen::Index m = f.l0.dim();
  Eigen::VectorXd cs(m), sn(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    cs(k) = std::cos(f.theta[static_cast<std::size_t>(k)]);
    sn(k) = std::sin(f.theta[static_cast<std::size_t>(k)]);
  }
  Matrix out(2 * m, 2 * m);
  const Matrix& l0 = f.l0.matrix();
  const Matrix& l1 = f.l1.matrix();
  const Matrix& r0 = f.r0.matrix();
  const Matrix& r1 = f.r1.matrix();
  out.topLeftCorner(m, m) = l0 * cs.asDiagonal() * r0;
  out.topRightCorner(m, m) = l0 * sn.asDiagonal() * r1;
  out.bottomLeftCorner(m, m) = -(l1 * sn.asDiagonal() * r0);
  out.bottomRightCorner(m, m) = l1 * cs.asDiagonal() * r1;
  return out;
}

CsdResult csd(const Unitary& u) {
  if (u.qubits() < 2) throw InvalidArgument("csd needs at least two qubits");
  const auto perm = reorder_last_qubit_major(u.qubits());
  CsdResult f = csd_blocks(permute(u.matrix(), perm));
  return f;
}

namespace {

// Mixing angles for the Hermitian part of e^{-i beta} U. Eigenvalues e^{i a}
// and e^{i b} of U collide in the mix exactly when a + b = 2 beta (mod 2pi),
// so several irrational angles are tried and clusters are re-split.
constexpr double kMixAngles[] = {0.5772156649015329, 1.3247179572447460,
                                 2.2360679774997897, 0.3183098861837907,
                                 2.7182818284590452, 1.6180339887498949};

double offdiag_norm(const Matrix& b) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
      if (i != j) s += std::norm(b(i, j));
    }
  }
  return std::sqrt(s);
}

Matrix eig_normal_vectors(const Matrix& u, int depth) {
  const Eigen::Index d = u.rows();
  const double target = 1e-13 * static_cast<double>(d);
  Matrix best_q;
  double best_off = std::numeric_limits<double>::infinity();
  const int n_angles = static_cast<int>(std::size(kMixAngles));
  for (int k = 0; k < n_angles; ++k) {
    const double beta = kMixAngles[(k + depth) % n_angles];
    const Complex ph = std::polar(1.0, -beta);
    const Matrix h = (ph * u + std::conj(ph) * u.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Matrix q = es.eigenvectors();
    const double off = offdiag_norm(q.adjoint() * u * q);
    if (off < best_off) {
      best_off = off;
      best_q = std::move(q);
    }
    if (best_off <= target) break;
  }
  if (best_off > target && depth < 4 && d > 1) {
    // Split into clusters coupled by the residual and re-diagonalize each.
    const Matrix b = best_q.adjoint() * u * best_q;
    const double link = std::max(target, 1e-14 * static_cast<double>(d));
    std::vector<Eigen::Index> parent(static_cast<std::size_t>(d));
    std::iota(parent.begin(), parent.end(), Eigen::Index{0});
    auto find = [&](Eigen::Index x) {
      while (parent[static_cast<std::size_t>(x)] != x) {
        x = parent[static_cast<std::size_t>(x)] =
            parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      }
      return x;
    };
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = i + 1; j < d; ++j) {
        if (std::abs(b(i, j)) > link || std::abs(b(j, i)) > link) {
          parent[static_cast<std::size_t>(find(i))] = find(j);
        }
      }
    }
    std::vector<std::vector<Eigen::Index>> clusters(static_cast<std::size_t>(d));
    for (Eigen::Index i = 0; i < d; ++i) {
      clusters[static_cast<std::size_t>(find(i))].push_back(i);
    }
    for (const auto& cl : clusters) {
      if (cl.size() < 2) continue;
      const auto sz = static_cast<Eigen::Index>(cl.size());
      Matrix sub(sz, sz);
      Matrix cols(d, sz);
      for (Eigen::Index x = 0; x < sz; ++x) {
        cols.col(x) = best_q.col(cl[static_cast<std::size_t>(x)]);
        for (Eigen::Index y = 0; y < sz; ++y) {
          sub(x, y) = b(cl[static_cast<std::size_t>(x)], cl[static_cast<std::size_t>(y)]);
        }
      }
      const Matrix rot = eig_normal_vectors(sub, depth + 1);
      const Matrix updated = cols * rot;
      for (Eigen::Index x = 0; x < sz; ++x) {
        best_q.col(cl[static_cast<std::size_t>(x)]) = updated.col(x);
      }
    }
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  return detail::orthonormalize_columns(best_q, order);
}

}  // namespace

EigResult eig_unitary(const Unitary& u) {
  const double bound = 1e-9 * static_cast<double>(u.dim());
  if (const double res = u.unitarity_residual(); !(res <= bound)) {
    throw NumericalValidationError("eig_unitary input is not unitary (residual " +
                                   std::to_string(res) + ")");
  }
  Matrix q = eig_normal_vectors(u.matrix(), 0);
  const Matrix b = q.adjoint() * u.matrix() * q;
  std::vector<Complex> lambda(static_cast<std::size_t>(u.dim()));
  for (Eigen::Index j = 0; j < u.dim(); ++j) {
    const Complex l = b(j, j);
    lambda[static_cast<std::size_t>(j)] = l / std::abs(l);
  }
  return EigResult{Unitary::unchecked(std::move(q)), std::move(lambda)};
}

double dist_phase(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument("dist_phase: dimension mismatch");
  }
  // Evaluated as ||A - e^{i phi} B|| at the optimal phase rather than through
  // sqrt(2 dim - 2|tr(A^dag B)|), which loses half the digits near zero.
  const Complex tr = (b.adjoint() * a).trace();
  const Complex ph = std::abs(tr) > 0.0 ? tr / std::abs(tr) : Complex(1.0, 0.0);
  return (a - ph * b).norm();
}

double dist_phase(const Unitary& a, const Unitary& b) {
  return dist_phase(a.matrix(), b.matrix());
}

Unitary expm_pauli_combo(std::span<const double> coeffs,
                         std::span<const PauliString> strings) {
  if (coeffs.size() != strings.size()) {
    throw InvalidArgument("expm_pauli_combo: coefficient/string count mismatch");
  }
  if (strings.empty()) throw InvalidArgument("expm_pauli_combo: no strings");
  const int n = strings.front().size();
  for (const auto& s : strings) {
    if (s.size() != n) throw InvalidArgument("expm_pauli_combo: mixed qubit counts");
  }
  for (std::size_t i = 0; i < strings.size(); ++i) {
    for (std::size_t j = i + 1; j < strings.size(); ++j) {
      if (!strings[i].commutes_with(strings[j])) {
        throw InvalidArgument("expm_pauli_combo: " + strings[i].pretty() + " and " +
                              strings[j].pretty() + " do not commute");
      }
    }
  }
  const Eigen::Index d = Eigen::Index{1} << n;
  Matrix h = Matrix::Zero(d, d);
  for (std::size_t j = 0; j < strings.size(); ++j) {
    if (coeffs[j] != 0.0) h += coeffs[j] * strings[j].matrix();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Matrix& v = es.eigenvectors();
  Eigen::VectorXcd phases(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    phases(k) = std::polar(1.0, es.eigenvalues()(k));
  }
  return Unitary::unchecked(v * phases.asDiagonal() * v.adjoint());
}

}  // namespace cartan
