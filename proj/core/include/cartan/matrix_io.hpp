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

#include <iosfwd>
#include <string>
#include <string_view>

#include "cartan/linalg.hpp"

namespace cartan {

/// Text format: optional '#' comment lines, then the qubit count n, then 2^n
/// rows of 2^n entries written as "<re>" or "<re>+<im>j" / "<re>-<im>j".
Matrix read_matrix(std::istream& in);
Matrix read_matrix_file(const std::string& path);
Matrix parse_matrix(std::string_view text);

void write_matrix(std::ostream& out, const Matrix& m);
void write_matrix_file(const std::string& path, const Matrix& m);
std::string format_matrix(const Matrix& m);

/// Parses one entry such as "0.5", "-1e-3+2j", "0.7071-0.7071j" or "1j".
Complex parse_complex(std::string_view token);
std::string format_complex(Complex z);

}  // namespace cartan
