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

#include <stdexcept>
#include <string>

namespace cartan {

// Bad arguments: wrong dimensions, qubit indices out of range, etc.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An input that should be unitary (or otherwise numerically well-formed) is
// not, within the tolerance the operation was asked to honour.
class NumericalValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A factorization finished but its reassembly residual exceeds tolerance.
class DecompositionFailed : public std::runtime_error {
 public:
  DecompositionFailed(const std::string& stage, int qubits, double residual,
                      double tolerance)
      : std::runtime_error(
            stage + " failed at n=" + std::to_string(qubits) +
            ": residual " + std::to_string(residual) + " exceeds " +
            std::to_string(tolerance)),
        stage_(stage),
        qubits_(qubits),
        residual_(residual) {}

  const std::string& stage() const { return stage_; }
  int qubits() const { return qubits_; }
  double residual() const { return residual_; }

 private:
  std::string stage_;
  int qubits_;
  double residual_;
};

// An emitted gate sequence does not reproduce its oracle exponential.
class EmitterContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Operation called on an input outside its documented domain
// (e.g. exporting a circuit that still contains fSWAP gates).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Text input (matrix file, QASM) could not be parsed.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cartan
