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
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cartan {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);

/// Phase-free n-qubit Pauli word. Position k (1-based) holds the letter that
/// acts on qubit k; qubit 1 is the most significant bit of a basis index.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::vector<Pauli> letters);

  static PauliString identity(int qubits);
  static PauliString single(int qubits, int qubit, Pauli p);
  /// Parses compact form such as "XXIZ" (case-insensitive, '1' accepted for I).
  static PauliString parse(std::string_view text);

  int size() const { return static_cast<int>(letters_.size()); }
  Pauli at(int qubit) const { return letters_.at(qubit - 1); }
  const std::vector<Pauli>& letters() const { return letters_; }

  int weight() const;
  bool is_identity() const { return weight() == 0; }
  bool commutes_with(const PauliString& other) const;

  PauliString with(int qubit, Pauli p) const;
  /// Appends one more qubit carrying `p` (the tensor product P ⊗ σ_p).
  PauliString extended(Pauli p) const;

  /// Bit masks over basis indices: bit (n - k) belongs to qubit k.
  std::uint64_t x_mask() const;
  std::uint64_t z_mask() const;

  std::string str() const;
  /// Product notation, e.g. "x1x2z3"; the identity renders as "1".
  std::string pretty() const;

  Eigen::MatrixXcd matrix() const;

  auto operator<=>(const PauliString&) const = default;
  bool operator==(const PauliString&) const = default;

 private:
  std::vector<Pauli> letters_;
};

/// P·Q = i^phase_power · string.
struct PauliProduct {
  int phase_power = 0;
  PauliString string;
};

PauliProduct multiply(const PauliString& lhs, const PauliString& rhs);

}  // namespace cartan
