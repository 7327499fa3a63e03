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
#include <string>
#include <variant>
#include <vector>

#include "cartan/circuit.hpp"
#include "cartan/kak.hpp"
#include "cartan/pauli.hpp"

namespace cartan {

#ifdef NDEBUG
inline constexpr bool kCheckEmittersByDefault = false;
#else
inline constexpr bool kCheckEmittersByDefault = true;
#endif

/// exp(i(a x_t - b z_h x_t)) on an n-qubit register: block-diagonal in the
/// head qubit with x-rotation blocks of angle a - b and a + b.
Circuit emit_block_form(double a, double b, int n, int head_qubit, int tail_qubit);

struct EmitterSpec {
  GeneratorPair pair;
  double a = 0.0;  // coefficient of pair.p
  double b = 0.0;  // coefficient of pair.q
  int n = 0;
};

/// exp(i(a P + b Q)) as a conjugation network around emit_block_form. f-type
/// pairs contain FSwap gates; expand them with expand_fswap.
Circuit emit_pair_exponential(const EmitterSpec& spec, bool check = kCheckEmittersByDefault);

/// exp(i a z1 z2 z_n).
Circuit emit_diag_singleton(double a, int n, bool check = kCheckEmittersByDefault);

/// Products of pair (and singleton) emitters for coefficients on h(n) / f(n).
/// Terms whose angles are all within `prune` of zero are skipped.
Circuit emit_exp_h(const PauliCoeffs& y, int n, double prune = 0.0,
                   bool check = kCheckEmittersByDefault);
Circuit emit_exp_f(const PauliCoeffs& z, int n, double prune = 0.0,
                   bool check = kCheckEmittersByDefault);

/// exp(i(a XX + b YY + c ZZ)) on qubits (q1, q2) with three CNOTs, exact
/// including phase.
Circuit emit_canonical_su4(double a, double b, double c, int n, int q1, int q2);

/// A unitary still to be synthesized, acting on `support` (ascending; the
/// first qubit is the most significant bit of `m`).
struct PendingBlock {
  std::vector<int> support;
  Matrix m;
};

struct BlockCircuit {
  int n = 0;
  std::vector<std::variant<Gate, PendingBlock>> items;
  double declared_phase = 0.0;
};

/// Multiplies every gate that sits next to a pending block (possibly across
/// gates on other wires) and acts only inside its support into the block.
/// Returns the number of absorbed gates; the overall unitary is unchanged.
int absorb_boundary(BlockCircuit& c);

Unitary unitary_of(const BlockCircuit& c);

struct SynthesisOptions {
  int opt_level = 1;
  /// Computes report.distance with a dense evaluation of the circuit.
  bool verify = true;
  /// Angles at or below this magnitude are treated as zero.
  double prune = 1e-9;
  bool check_emitters = kCheckEmittersByDefault;
};

struct SynthesisReport {
  /// Keys "exp_h", "exp_f", "recursion", "base".
  std::map<std::string, int> cnot_by_stage;
  int total_cnot = 0;
  double distance = -1.0;  // negative when not verified
  int opt_level = 1;
  CountReport counts;
};

struct SynthesisResult {
  Circuit circuit;
  SynthesisReport report;
};

/// Compiles u into CNOTs and one-qubit gates. opt 0 expands every fSWAP into
/// four CNOTs; opt 1 elides the SWAP part by relabeling wires and merges
/// one-qubit runs; opt 2 also absorbs boundary gates into neighbouring blocks
/// before those blocks are decomposed.
SynthesisResult synthesize(const Unitary& u, const SynthesisOptions& options = {});

/// Emits a decomposition tree (opt 0/1 path, before fSWAP handling).
Circuit emit_tree(const DecompositionNode& node, FswapMode mode, double prune = 1e-9,
                  bool check = kCheckEmittersByDefault);

}  // namespace cartan
