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

#include <cstdint>
#include <iosfwd>
#include <string>

namespace cartan::cli {

enum class Command { synth, verify, random, count };
enum class Format { qasm, json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerification = 1;
inline constexpr int kExitInput = 2;

struct RunConfig {
  Command command = Command::synth;
  std::string input;  // matrix file
  std::string qasm;   // circuit file (verify)
  std::string out;    // empty: stdout
  int opt_level = 1;
  double tol = 1e-8;
  int qubits = 0;
  std::uint64_t seed = 0;
  Format format = Format::qasm;
  /// synth: skip the dense verification (distance reported as null).
  bool count_only = false;
};

/// Throws cartan::InvalidArgument when tol <= 0 or opt_level is not 0..2.
void check_config(const RunConfig& cfg);

/// Writes the circuit to cfg.out (or `out` for the qasm format) and the JSON
/// report {qubits, cnot_count, formula_bound, distance, elapsed_ms,
/// opt_level} to `out` for the json format, `err` otherwise.
int cmd_synth(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_random(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_count(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Dispatches on cfg.command and maps exceptions onto exit codes.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace cartan::cli
