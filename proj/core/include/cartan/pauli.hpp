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

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "cartan/linalg.hpp"
#include "cartan/pauli_string.hpp"

namespace cartan {

enum class GeneratorKind { a, b, s, h, f };

const char* to_string(GeneratorKind kind);

struct GeneratorSet {
  int level = 0;
  GeneratorKind kind = GeneratorKind::h;
  std::vector<PauliString> members;
};

/// Members in recursion order. a(n) spans h(n) and b(n) spans f(n), so the
/// kinds a/h and b/f return the same members; b(2) and f(2) are empty.
GeneratorSet build_generators(int n, GeneratorKind kind);

enum class PairKind { XYHead, ZIHead };

struct GeneratorPair {
  PauliString p;
  PauliString q;
  PairKind kind;
};

struct PairGrouping {
  std::vector<GeneratorPair> pairs;
  std::optional<PauliString> singleton;
};

PairGrouping group_pairs(const GeneratorSet& gs);

/// Simultaneous eigenbasis of the abelian group generated by
/// {x1x2, z1z2, x3, ..., xm} on m qubits.
struct GroupDiagonalizer {
  Unitary c;
  int qubits = 0;
  /// Group element -> diagonal of c^dag g c (entries +-1).
  std::map<PauliString, std::vector<int>> label_map;
};

GroupDiagonalizer build_diagonalizer(int m);

/// Cached, shared instance for m qubits (m <= 12).
const GroupDiagonalizer& diagonalizer(int m);

using PauliCoeffs = std::map<PauliString, double>;

/// w_alpha = 2^-m sum_j pattern_alpha(j) theta_j over all group elements,
/// identity included.
PauliCoeffs walsh_coeffs(std::span<const double> theta, const GroupDiagonalizer& d);

/// Inverse of walsh_coeffs: sum_alpha w_alpha pattern_alpha.
std::vector<double> walsh_resum(const PauliCoeffs& w, const GroupDiagonalizer& d);

/// exp(i sum coeffs[P] P) for mutually commuting strings (all of size n).
Unitary expm_coeffs(const PauliCoeffs& coeffs, int n);

}  // namespace cartan
