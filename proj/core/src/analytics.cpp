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

#include "cartan/analytics.hpp"

#include "cartan/errors.hpp"

namespace cartan {

namespace {

void check_range(int n, int lo, const char* what) {
  if (n < lo || n > kMaxFormulaQubits) {
    throw InvalidArgument(std::string(what) + ": n must be in [" + std::to_string(lo) +
                          ", " + std::to_string(kMaxFormulaQubits) + "]");
  }
}

std::int64_t pow2(int k) { return std::int64_t{1} << k; }

std::int64_t binom(int n, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::int64_t formula_c_h(int n) {
  check_range(n, 3, "formula_c_h");
  return n * pow2(n - 2) + pow2(n - 1);
}

std::int64_t formula_c_f(int n) {
  check_range(n, 3, "formula_c_f");
  return n * pow2(n - 2) + pow2(n - 1);
}

std::int64_t formula_c(int n) {
  check_range(n, 3, "formula_c");
  return 3 * (pow2(n - 1) + n * pow2(n - 2));
}

std::int64_t formula_t(int n) {
  check_range(n, 2, "formula_t");
  return 21 * pow2(2 * (n - 2)) - 3 * (n * pow2(n - 2) + pow2(n));
}

std::int64_t formula_t_recurrence(int n) {
  check_range(n, 2, "formula_t_recurrence");
  std::int64_t t = 3;
  for (int k = 3; k <= n; ++k) t = formula_c(k) + 4 * t;
  return t;
}

std::int64_t pascal_c_h(int n) {
  check_range(n, 3, "pascal_c_h");
  // Each of the 2^{n-3} tail patterns of length n-3 yields one XY-head and one
  // ZI-head pair; a pattern with k x's costs 2(k+2) + 2 and 2(k+1) + 2.
  std::int64_t total = 0;
  for (int k = 0; k <= n - 3; ++k) {
    total += binom(n - 3, k) * ((2 * (k + 2) + 2) + (2 * (k + 1) + 2));
  }
  return total;
}

CountFormulae count_formulae(int n) {
  check_range(n, 3, "count_formulae");
  return {n, formula_c_h(n), formula_c_f(n), formula_c(n), formula_t(n)};
}

std::int64_t csd_cnots(int n) {
  check_range(n, 1, "csd_cnots");
  return pow2(2 * n) - pow2(n + 1);
}

std::int64_t qsd_cnots(int n) {
  check_range(n, 1, "qsd_cnots");
  // (23 * 4^n - 72 * 2^n + 64) / 48 rounded to the nearest integer; for
  // n >= 4 the common factor 16 is cancelled first so n = 30 fits in 64 bits.
  std::int64_t num, den;
  if (n < 4) {
    num = 23 * pow2(2 * n) - 72 * pow2(n) + 64;
    den = 48;
  } else {
    num = 23 * pow2(2 * (n - 2)) - 9 * pow2(n - 1) + 4;
    den = 3;
  }
  const std::int64_t q = num / den;
  const std::int64_t r = num % den;
  return 2 * r >= den ? q + 1 : q;
}

std::int64_t lower_bound_cnots(int n) {
  check_range(n, 1, "lower_bound_cnots");
  const std::int64_t num = pow2(2 * n) - 3 * n - 1;
  return (num + 3) / 4;
}

std::vector<ComparisonRow> comparison_table(int n) {
  check_range(n, 2, "comparison_table");
  return {{"CSD", n, csd_cnots(n)},
          {"QSD", n, qsd_cnots(n)},
          {"KG", n, formula_t(n)},
          {"bound", n, lower_bound_cnots(n)}};
}

}  // namespace cartan
