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
#include <string>
#include <utility>
#include <vector>

namespace cartan {

/// CNOT budgets of the recursive Cartan synthesis (exact integers).
struct CountFormulae {
  int n = 0;
  std::int64_t c_h = 0;
  std::int64_t c_f = 0;
  std::int64_t c_n = 0;
  std::int64_t t_n = 0;
};

inline constexpr int kMaxFormulaQubits = 30;

/// C_h(n) = C_f(n) = n 2^{n-2} + 2^{n-1}, n >= 3.
std::int64_t formula_c_h(int n);
std::int64_t formula_c_f(int n);
/// C_n = C_h(n) + 2 C_f(n) = 3 (2^{n-1} + n 2^{n-2}), n >= 3.
std::int64_t formula_c(int n);
/// T_n = 21 * 4^{n-2} - 3 (n 2^{n-2} + 2^n), n >= 2 (T_2 = 3).
std::int64_t formula_t(int n);
/// T_n from the recurrence T_n = C_n + 4 T_{n-1}, T_2 = 3.
std::int64_t formula_t_recurrence(int n);

CountFormulae count_formulae(int n);

/// Sum over k of binom(n-3, k) * 2 (k + 1) + 2 * 2^{n-3}: per-pair budget of
/// the h(n) emitters counted pair by pair.
std::int64_t pascal_c_h(int n);

struct ComparisonRow {
  std::string method;  // "CSD", "QSD", "KG", "bound"
  int n = 0;
  std::int64_t cnots = 0;
};

/// CSD 4^n - 2^{n+1}; QSD round(23/48 4^n - 3/2 2^n + 4/3);
/// KG T_n; lower bound ceil((4^n - 3n - 1) / 4).
std::vector<ComparisonRow> comparison_table(int n);

/// Leading coefficient of T_n / 4^n over that of the lower bound:
/// (21/16) / (1/4) = 21/4, as {numerator, denominator}.
inline constexpr std::pair<std::int64_t, std::int64_t> kLeadingRatioToBound{21, 4};

std::int64_t csd_cnots(int n);
std::int64_t qsd_cnots(int n);
std::int64_t lower_bound_cnots(int n);

}  // namespace cartan
