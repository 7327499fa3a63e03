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

#include <algorithm>
#include <bit>
#include <mutex>

#include "cartan/errors.hpp"
#include "cartan/pauli.hpp"
#include "cartan/pauli_string.hpp"

namespace cartan {

char to_char(Pauli p) {
  switch (p) {
    case Pauli::I:
      return 'I';
    case Pauli::X:
      return 'X';
    case Pauli::Y:
      return 'Y';
    case Pauli::Z:
      return 'Z';
  }
  return '?';
}

PauliString::PauliString(std::vector<Pauli> letters) : letters_(std::move(letters)) {
  if (letters_.size() > 62) throw InvalidArgument("Pauli string too long");
}

PauliString PauliString::identity(int qubits) {
  if (qubits < 0) throw InvalidArgument("negative qubit count");
  return PauliString(std::vector<Pauli>(static_cast<std::size_t>(qubits), Pauli::I));
}

PauliString PauliString::single(int qubits, int qubit, Pauli p) {
  return identity(qubits).with(qubit, p);
}

PauliString PauliString::parse(std::string_view text) {
  std::vector<Pauli> out;
  for (char ch : text) {
    switch (ch) {
      case 'I':
      case 'i':
      case '1':
        out.push_back(Pauli::I);
        break;
      case 'X':
      case 'x':
        out.push_back(Pauli::X);
        break;
      case 'Y':
      case 'y':
        out.push_back(Pauli::Y);
        break;
      case 'Z':
      case 'z':
        out.push_back(Pauli::Z);
        break;
      default:
        throw ParseError(std::string("bad Pauli letter '") + ch + "'");
    }
  }
  return PauliString(std::move(out));
}

int PauliString::weight() const {
  return static_cast<int>(std::count_if(letters_.begin(), letters_.end(),
                                        [](Pauli p) { return p != Pauli::I; }));
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (other.size() != size()) throw InvalidArgument("Pauli size mismatch");
  const auto sym = (x_mask() & other.z_mask()) ^ (z_mask() & other.x_mask());
  return std::popcount(sym) % 2 == 0;
}

PauliString PauliString::with(int qubit, Pauli p) const {
  if (qubit < 1 || qubit > size()) throw InvalidArgument("qubit index out of range");
  PauliString out = *this;
  out.letters_[static_cast<std::size_t>(qubit - 1)] = p;
  return out;
}

PauliString PauliString::extended(Pauli p) const {
  PauliString out = *this;
  out.letters_.push_back(p);
  return out;
}

std::uint64_t PauliString::x_mask() const {
  std::uint64_t m = 0;
  const int n = size();
  for (int k = 1; k <= n; ++k) {
    const Pauli p = at(k);
    if (p == Pauli::X || p == Pauli::Y) m |= std::uint64_t{1} << (n - k);
  }
  return m;
}

std::uint64_t PauliString::z_mask() const {
  std::uint64_t m = 0;
  const int n = size();
  for (int k = 1; k <= n; ++k) {
    const Pauli p = at(k);
    if (p == Pauli::Z || p == Pauli::Y) m |= std::uint64_t{1} << (n - k);
  }
  return m;
}

std::string PauliString::str() const {
  std::string s;
  for (Pauli p : letters_) s.push_back(to_char(p));
  return s;
}

std::string PauliString::pretty() const {
  std::string s;
  for (int k = 1; k <= size(); ++k) {
    const Pauli p = at(k);
    if (p == Pauli::I) continue;
    s.push_back(static_cast<char>(to_char(p) - 'A' + 'a'));
    s += std::to_string(k);
  }
  return s.empty() ? "1" : s;
}

Eigen::MatrixXcd PauliString::matrix() const {
  const Eigen::Index d = Eigen::Index{1} << size();
  const auto xm = x_mask();
  const auto zm = z_mask();
  const int ny = std::popcount(xm & zm);
  static const std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  // P|j> = i^{#Y} (-1)^{|j & z|} |j ^ x>
  for (Eigen::Index j = 0; j < d; ++j) {
    const auto uj = static_cast<std::uint64_t>(j);
    const int sign = std::popcount(uj & zm) % 2 == 0 ? 1 : -1;
    m(static_cast<Eigen::Index>(uj ^ xm), j) = ipow[ny % 4] * static_cast<double>(sign);
  }
  return m;
}

PauliProduct multiply(const PauliString& lhs, const PauliString& rhs) {
  if (lhs.size() != rhs.size()) throw InvalidArgument("Pauli size mismatch");
  int power = 0;
  std::vector<Pauli> out(static_cast<std::size_t>(lhs.size()));
  for (int k = 1; k <= lhs.size(); ++k) {
    const int a = static_cast<int>(lhs.at(k));
    const int b = static_cast<int>(rhs.at(k));
    if (a == 0 || b == 0 || a == b) {
      out[static_cast<std::size_t>(k - 1)] = static_cast<Pauli>(a ^ b);
      continue;
    }
    // XY = iZ, YZ = iX, ZX = iY; reversed order picks up -i.
    const int c = 6 - a - b;
    out[static_cast<std::size_t>(k - 1)] = static_cast<Pauli>(c);
    power += ((b - a + 3) % 3 == 1) ? 1 : 3;
  }
  return PauliProduct{power % 4, PauliString(std::move(out))};
}

}  // namespace cartan
