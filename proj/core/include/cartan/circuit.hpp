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
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "cartan/linalg.hpp"

namespace cartan {

// Qubits are 1-based; qubit 1 is the most significant bit of a basis index.
struct Cnot {
  int control;
  int target;
  bool operator==(const Cnot&) const = default;
};
struct Swap {
  int a;
  int b;
  bool operator==(const Swap&) const = default;
};
/// Fermionic swap, SWAP * CZ: |01> <-> |10>, |11> -> -|11>.
struct FSwap {
  int a;
  int b;
  bool operator==(const FSwap&) const = default;
};
struct Rx {
  int qubit;
  double angle;
  bool operator==(const Rx&) const = default;
};
struct Ry {
  int qubit;
  double angle;
  bool operator==(const Ry&) const = default;
};
struct Rz {
  int qubit;
  double angle;
  bool operator==(const Rz&) const = default;
};
struct U1Q {
  int qubit;
  Eigen::Matrix2cd m;
  bool operator==(const U1Q& o) const { return qubit == o.qubit && m == o.m; }
};
struct GPhase {
  double angle;
  bool operator==(const GPhase&) const = default;
};

using GateOp = std::variant<Cnot, Swap, FSwap, Rx, Ry, Rz, U1Q, GPhase>;

/// Which part of a synthesis emitted a gate; used only for reporting.
enum class Stage : std::uint8_t { none, exp_h, exp_f, recursion, base };

const char* to_string(Stage s);

struct Gate {
  GateOp op;
  Stage stage = Stage::none;

  Gate() = default;
  template <class T>
  Gate(T g, Stage s = Stage::none) : op(std::move(g)), stage(s) {}  // NOLINT

  /// Qubits touched, in gate order (control first for CNOT).
  std::vector<int> qubits() const;
  bool is_two_qubit() const { return qubits().size() == 2; }
  bool operator==(const Gate& o) const { return op == o.op; }
};

Eigen::Matrix2cd hadamard();

/// Matrix of a one-qubit gate (Rx/Ry/Rz/U1Q); throws for other kinds.
Eigen::Matrix2cd one_qubit_matrix(const Gate& g);

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int qubits) : n_(qubits) {}

  int qubits() const { return n_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::vector<Gate>& gates() { return gates_; }
  double declared_phase() const { return phase_; }
  void set_declared_phase(double p) { phase_ = p; }
  void add_phase(double p) { phase_ += p; }

  /// Validates qubit indices and payload unitarity before appending.
  void add(Gate g);
  /// Appends `other` (same or smaller register) after this circuit.
  void append(const Circuit& other);
  /// Sets the stage of every gate.
  void tag(Stage s);

  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

 private:
  int n_ = 0;
  std::vector<Gate> gates_;
  double phase_ = 0.0;
};

void validate(const Gate& g, int qubits);

/// Exact matrix of the circuit (leftmost gate acts first) times e^{i phase}.
Unitary unitary_of(const Circuit& c);

/// Applies the circuit's gates to the columns of `state` in place.
void apply_gates(const Circuit& c, Matrix& state);

enum class FswapMode { naive, elided };

struct ExpandedCircuit {
  Circuit circuit;
  /// Logical qubit k ends on physical wire wire_map[k - 1]; identity for naive.
  std::vector<int> wire_map;
};

ExpandedCircuit expand_fswap(const Circuit& c, FswapMode mode);

struct CountReport {
  int cnot = 0;
  int one_qubit = 0;
  int fswap = 0;
  int swap = 0;
  int effective_cnot = 0;
};

CountReport count(const Circuit& c, FswapMode mode = FswapMode::elided);

/// Fuses runs of one-qubit gates on a wire into a single gate and drops
/// runs equal to the identity up to phase (the phase moves to declared_phase).
Circuit merge_single_qubit(const Circuit& c, double drop_tolerance = 1e-12);

}  // namespace cartan
