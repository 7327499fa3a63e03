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

#include "cartan/pauli.hpp"

#include <array>
#include <bit>
#include <memory>
#include <mutex>

#include "cartan/errors.hpp"

namespace cartan {

const char* to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::a:
      return "a";
    case GeneratorKind::b:
      return "b";
    case GeneratorKind::s:
      return "s";
    case GeneratorKind::h:
      return "h";
    case GeneratorKind::f:
      return "f";
  }
  return "?";
}

namespace {

std::vector<PauliString> a_members(int n);

std::vector<PauliString> s_members(int k) {
  std::vector<PauliString> out;
  for (int i = 2; i <= k; ++i) {
    for (PauliString p : a_members(i)) {
      for (int pad = i; pad < k; ++pad) p = p.extended(Pauli::I);
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<PauliString> a_members(int n) {
  if (n == 2) {
    return {PauliString::parse("XX"), PauliString::parse("YY"),
            PauliString::parse("ZZ")};
  }
  std::vector<PauliString> out;
  for (const auto& alpha : s_members(n - 1)) out.push_back(alpha.extended(Pauli::X));
  out.push_back(PauliString::single(n, n, Pauli::X));
  return out;
}

std::vector<PauliString> b_members(int n) {
  if (n == 2) return {};
  std::vector<PauliString> out;
  for (const auto& alpha : s_members(n - 1)) out.push_back(alpha.extended(Pauli::Z));
  return out;
}

bool has_head(const PauliString& p, Pauli h) {
  return p.at(1) == h && p.at(2) == h;
}

PauliString with_head(const PauliString& p, Pauli h) {
  return p.with(1, h).with(2, h);
}

}  // namespace

GeneratorSet build_generators(int n, GeneratorKind kind) {
  if (n < 2) throw InvalidArgument("generator sets need n >= 2");
  if (n > 20) throw InvalidArgument("generator sets limited to n <= 20");
  GeneratorSet gs{n, kind, {}};
  switch (kind) {
    case GeneratorKind::a:
    case GeneratorKind::h:
      gs.members = a_members(n);
      break;
    case GeneratorKind::b:
    case GeneratorKind::f:
      gs.members = b_members(n);
      break;
    case GeneratorKind::s:
      gs.members = s_members(n);
      break;
  }
  return gs;
}

PairGrouping group_pairs(const GeneratorSet& gs) {
  const bool is_h = gs.kind == GeneratorKind::h || gs.kind == GeneratorKind::a;
  const bool is_f = gs.kind == GeneratorKind::f || gs.kind == GeneratorKind::b;
  if (!is_h && !is_f) throw InvalidArgument("group_pairs needs an h or f set");
  PairGrouping out;
  const int n = gs.level;
  if (n == 2) {
    if (is_h) {
      out.pairs.push_back({PauliString::parse("XX"), PauliString::parse("YY"),
                           PairKind::XYHead});
      out.singleton = PauliString::parse("ZZ");
    }
    return out;
  }
  std::vector<bool> used(gs.members.size(), false);
  auto index_of = [&](const PauliString& p) -> std::size_t {
    for (std::size_t i = 0; i < gs.members.size(); ++i) {
      if (gs.members[i] == p) return i;
    }
    return gs.members.size();
  };
  for (std::size_t i = 0; i < gs.members.size(); ++i) {
    if (used[i]) continue;
    const PauliString& p = gs.members[i];
    PairKind kind;
    PauliString partner;
    if (has_head(p, Pauli::X)) {
      kind = PairKind::XYHead;
      partner = with_head(p, Pauli::Y);
    } else if (has_head(p, Pauli::Z)) {
      kind = PairKind::ZIHead;
      partner = with_head(p, Pauli::I);
    } else {
      continue;  // taken later as the partner of an XX or ZZ head
    }
    const std::size_t j = index_of(partner);
    used[i] = true;
    if (j == gs.members.size()) {
      if (out.singleton) throw InvalidArgument("generator set has two unpaired members");
      out.singleton = p;
      continue;
    }
    used[j] = true;
    out.pairs.push_back({p, partner, kind});
  }
  for (std::size_t i = 0; i < gs.members.size(); ++i) {
    if (!used[i]) {
      throw InvalidArgument("generator " + gs.members[i].pretty() + " left unpaired");
    }
  }
  return out;
}

namespace {

// Group element for subset mask `s` of the generators
// {x1x2, z1z2, x3, ..., xm}, returned phase-free with its sign (+-1).
std::pair<PauliString, int> group_element(int m, std::uint32_t s) {
  PauliString acc = PauliString::identity(m);
  int power = 0;
  for (int i = 0; i < m; ++i) {
    if (!(s >> i & 1u)) continue;
    PauliString g = PauliString::identity(m);
    if (i == 0) {
      g = g.with(1, Pauli::X).with(2, Pauli::X);
    } else if (i == 1) {
      g = g.with(1, Pauli::Z).with(2, Pauli::Z);
    } else {
      g = g.with(i + 1, Pauli::X);
    }
    auto prod = multiply(acc, g);
    power += prod.phase_power;
    acc = std::move(prod.string);
  }
  power %= 4;
  if (power % 2 != 0) throw EmitterContractError("non-Hermitian group product");
  return {acc, power == 0 ? 1 : -1};
}

// Applies a Pauli string (as a matrix) to a vector.
Eigen::VectorXcd apply_pauli(const PauliString& p, const Eigen::VectorXcd& v) {
  const auto xm = p.x_mask();
  const auto zm = p.z_mask();
  static const Complex ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex ph = ipow[std::popcount(xm & zm) % 4];
  Eigen::VectorXcd out(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    const auto uj = static_cast<std::uint64_t>(j);
    const double sign = std::popcount(uj & zm) % 2 == 0 ? 1.0 : -1.0;
    out(static_cast<Eigen::Index>(uj ^ xm)) = ph * sign * v(j);
  }
  return out;
}

}  // namespace

GroupDiagonalizer build_diagonalizer(int m) {
  if (m < 2) throw InvalidArgument("diagonalizer needs m >= 2");
  if (m > 12) throw InvalidArgument("diagonalizer limited to m <= 12");
  const Eigen::Index d = Eigen::Index{1} << m;
  std::vector<PauliString> gens;
  for (int i = 0; i < m; ++i) gens.push_back(group_element(m, 1u << i).first);

  Matrix c(d, d);
  // Column j is the joint eigenvector with eigenvalue (-1)^{b_i} for
  // generator i, where b_i is bit i of j.
  for (Eigen::Index j = 0; j < d; ++j) {
    bool found = false;
    for (Eigen::Index ref = 0; ref < d && !found; ++ref) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Unit(d, ref);
      for (int i = 0; i < m; ++i) {
        const double s = (j >> i & 1) ? -1.0 : 1.0;
        v = 0.5 * (v + s * apply_pauli(gens[static_cast<std::size_t>(i)], v));
      }
      const double norm = v.norm();
      if (norm < 1e-6) continue;
      v /= norm;
      Eigen::Index first = 0;
      while (std::abs(v(first)) < 1e-12) ++first;
      v *= std::conj(v(first)) / std::abs(v(first));
      c.col(j) = v;
      found = true;
    }
    if (!found) throw NumericalValidationError("diagonalizer projector vanished");
  }

  GroupDiagonalizer out{Unitary::checked(std::move(c), 1e-13), m, {}};
  const auto n_elems = std::uint32_t{1} << m;
  for (std::uint32_t s = 0; s < n_elems; ++s) {
    auto [string, sign] = group_element(m, s);
    std::vector<int> pattern(static_cast<std::size_t>(d));
    for (Eigen::Index j = 0; j < d; ++j) {
      const int parity = std::popcount(static_cast<std::uint32_t>(j) & s) % 2;
      pattern[static_cast<std::size_t>(j)] = parity == 0 ? sign : -sign;
    }
    out.label_map.emplace(std::move(string), std::move(pattern));
  }
  return out;
}

const GroupDiagonalizer& diagonalizer(int m) {
  if (m < 2 || m > 12) throw InvalidArgument("diagonalizer size out of range");
  static std::array<std::once_flag, 13> flags;
  static std::array<std::unique_ptr<GroupDiagonalizer>, 13> cache;
  const auto k = static_cast<std::size_t>(m);
  std::call_once(flags[k], [&] {
    cache[k] = std::make_unique<GroupDiagonalizer>(build_diagonalizer(m));
  });
  return *cache[k];
}

PauliCoeffs walsh_coeffs(std::span<const double> theta, const GroupDiagonalizer& d) {
  const std::size_t dim = std::size_t{1} << d.qubits;
  if (theta.size() != dim) {
    throw InvalidArgument("walsh_coeffs: expected " + std::to_string(dim) +
                          " angles, got " + std::to_string(theta.size()));
  }
  PauliCoeffs out;
  const double scale = 1.0 / static_cast<double>(dim);
  for (const auto& [string, pattern] : d.label_map) {
    double acc = 0.0;
    for (std::size_t j = 0; j < dim; ++j) acc += pattern[j] * theta[j];
    out.emplace(string, acc * scale);
  }
  return out;
}

std::vector<double> walsh_resum(const PauliCoeffs& w, const GroupDiagonalizer& d) {
  const std::size_t dim = std::size_t{1} << d.qubits;
  std::vector<double> theta(dim, 0.0);
  for (const auto& [string, value] : w) {
    const auto it = d.label_map.find(string);
    if (it == d.label_map.end()) {
      throw InvalidArgument("walsh_resum: " + string.pretty() + " is not a group element");
    }
    for (std::size_t j = 0; j < dim; ++j) theta[j] += it->second[j] * value;
  }
  return theta;
}

Unitary expm_coeffs(const PauliCoeffs& coeffs, int n) {
  if (coeffs.empty()) return Unitary::identity(n);
  std::vector<double> c;
  std::vector<PauliString> s;
  for (const auto& [string, value] : coeffs) {
    if (string.size() != n) throw InvalidArgument("expm_coeffs: string size mismatch");
    s.push_back(string);
    c.push_back(value);
  }
  return expm_pauli_combo(c, s);
}

}  // namespace cartan
