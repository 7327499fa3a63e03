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

#include <string>
#include <string_view>

#include "cartan/circuit.hpp"

namespace cartan {

/// OpenQASM 2.0 text. U1Q gates become u3 with their phase folded into the
/// trailing "// global-phase:" line. Throws PreconditionError on FSWAP.
std::string to_qasm(const Circuit& c);

/// Reads the subset written by to_qasm (cx, rx, ry, rz, u3, swap, h, x, y, z,
/// s, sdg, t, tdg and the global-phase comment).
Circuit parse_qasm(std::string_view text);

}  // namespace cartan
