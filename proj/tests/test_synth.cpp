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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cartan/analytics.hpp"
#include "cartan/errors.hpp"
#include "cartan/synth.hpp"
#include "test_support.hpp"

namespace cartan {
namespace {

using std::numbers::pi;
using testing::expi;
using testing::kron_pauli;

Matrix oracle(const PauliCoeffs& c, int n) {
  const Eigen::Index d = Eigen::Index{1} << n;
  Matrix h = Matrix::Zero(d, d);
  for (const auto& [s, v] : c) h += v * kron_pauli(s.str());
  return expi(h);
}

Matrix physical(const Circuit& c) {
  const ExpandedCircuit e = expand_fswap(c, FswapMode::naive);
  return unitary_of(e.circuit).matrix();
}

PauliCoeffs random_coeffs(int n, GeneratorKind kind, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> ang(-pi, pi);
  PauliCoeffs out;
  for (const auto& s : build_generators(n, kind).members) out[s] = ang(rng);
  return out;
}

TEST(BlockForm, MatchesExponential) {
  for (int n = 2; n <= 4; ++n) {
    for (int h = 1; h <= n; ++h) {
      for (int t = 1; t <= n; ++t) {
        if (h == t) continue;
        std::string xt(static_cast<std::size_t>(n), 'I'), zx = xt;
        xt[static_cast<std::size_t>(t - 1)] = 'X';
        zx[static_cast<std::size_t>(t - 1)] = 'X';
        zx[static_cast<std::size_t>(h - 1)] = 'Z';
        const Matrix expect = expi(0.37 * kron_pauli(xt) - (-1.21) * kron_pauli(zx));
        const Circuit c = emit_block_form(0.37, -1.21, n, h, t);
        EXPECT_LT((unitary_of(c).matrix() - expect).norm(), 1e-12);
        EXPECT_EQ(count(c).cnot, 2);
      }
    }
  }
}

TEST(PairExponential, EveryPairMatchesOracle) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> ang(-pi, pi);
  for (int n = 3; n <= 5; ++n) {
    for (GeneratorKind kind : {GeneratorKind::h, GeneratorKind::f}) {
      const PairGrouping g = group_pairs(build_generators(n, kind));
      for (const GeneratorPair& p : g.pairs) {
        const EmitterSpec spec{p, ang(rng), ang(rng), n};
        const Circuit c = emit_pair_exponential(spec, false);
        const PauliCoeffs coeffs{{p.p, spec.a}, {p.q, spec.b}};
        EXPECT_LT((physical(c) - oracle(coeffs, n)).norm(), 1e-11)
            << p.p.str() << " " << p.q.str();
      }
    }
  }
}

TEST(PairExponential, RejectsNonPair) {
  const GeneratorPair odd{PauliString::parse("XXX"), PauliString::parse("ZXX"), PairKind::XYHead};
  EXPECT_THROW(emit_pair_exponential({odd, 0.1, 0.2, 3}, false), InvalidArgument);
  const GeneratorPair bogus{PauliString::parse("XXI"), PauliString::parse("ZZI"), PairKind::XYHead};
  EXPECT_THROW(emit_pair_exponential({bogus, 0.1, 0.2, 3}, false), EmitterContractError);
}

TEST(DiagSingleton, MatchesOracle) {
  for (int n = 3; n <= 6; ++n) {
    std::string s(static_cast<std::size_t>(n), 'I');
    s[0] = s[1] = 'Z';
    s.back() = 'Z';
    const Circuit c = emit_diag_singleton(0.61, n, false);
    EXPECT_LT((unitary_of(c).matrix() - expi(0.61 * kron_pauli(s))).norm(), 1e-12);
    EXPECT_EQ(count(c).cnot, 4);
  }
}

TEST(ExpH, FullCoefficientsMatchOracleAndBudget) {
  for (int n = 3; n <= 6; ++n) {
    const PauliCoeffs y = random_coeffs(n, GeneratorKind::h, 10u + static_cast<unsigned>(n));
    const Circuit c = emit_exp_h(y, n, 0.0, false);
    EXPECT_LT((physical(c) - oracle(y, n)).norm(), 1e-10 * std::ldexp(1.0, n));
    EXPECT_EQ(count(c, FswapMode::elided).effective_cnot, formula_c_h(n)) << n;
    EXPECT_EQ(count(c, FswapMode::elided).effective_cnot, pascal_c_h(n)) << n;
  }
}

TEST(ExpF, FullCoefficientsMatchOracleAndBudget) {
  for (int n = 3; n <= 6; ++n) {
    const PauliCoeffs z = random_coeffs(n, GeneratorKind::f, 20u + static_cast<unsigned>(n));
    const Circuit c = emit_exp_f(z, n, 0.0, false);
    EXPECT_LT((physical(c) - oracle(z, n)).norm(), 1e-10 * std::ldexp(1.0, n));
    EXPECT_EQ(count(c, FswapMode::elided).effective_cnot, formula_c_f(n)) << n;
  }
}

TEST(ExpH, PruningSkipsZeroPairs) {
  PauliCoeffs y;
  y[PauliString::parse("IIX")] = 0.4;
  const Circuit c = emit_exp_h(y, 3, 1e-9, false);
  EXPECT_LT((physical(c) - oracle(y, 3)).norm(), 1e-12);
  EXPECT_LT(count(c).effective_cnot, formula_c_h(3));
  EXPECT_EQ(emit_exp_h({}, 3, 1e-9, false).size(), 0u);
}

TEST(ExpH, RejectsForeignStrings) {
  PauliCoeffs y;
  y[PauliString::parse("XYZ")] = 0.4;
  EXPECT_THROW(emit_exp_h(y, 3, 0.0, false), InvalidArgument);
}

TEST(CanonicalSu4, ExactIncludingPhase) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ang(-pi, pi);
  for (int i = 0; i < 30; ++i) {
    const double a = ang(rng), b = ang(rng), c = ang(rng);
    const PauliCoeffs k{{PauliString::parse("XX"), a},
                        {PauliString::parse("YY"), b},
                        {PauliString::parse("ZZ"), c}};
    const Circuit circ = emit_canonical_su4(a, b, c, 2, 1, 2);
    EXPECT_LT((unitary_of(circ).matrix() - oracle(k, 2)).norm(), 1e-12);
    EXPECT_EQ(count(circ).cnot, 3);
  }
  // Embedded on non-adjacent wires.
  const Circuit circ = emit_canonical_su4(0.3, 0.2, 0.1, 3, 1, 3);
  const PauliCoeffs k{{PauliString::parse("XIX"), 0.3},
                      {PauliString::parse("YIY"), 0.2},
                      {PauliString::parse("ZIZ"), 0.1}};
  EXPECT_LT((unitary_of(circ).matrix() - oracle(k, 3)).norm(), 1e-12);
}

TEST(AbsorbBoundary, KeepsUnitaryAndCountsAbsorbed) {
  BlockCircuit bc;
  bc.n = 3;
  bc.items.emplace_back(Gate(Rz{1, 0.2}));
  bc.items.emplace_back(Gate(Rx{3, 0.5}));  // outside support, stays
  bc.items.emplace_back(Gate(Cnot{1, 2}));
  bc.items.emplace_back(PendingBlock{{1, 2}, haar_unitary(2, 1).matrix()});
  bc.items.emplace_back(Gate(Ry{2, 0.3}));
  bc.items.emplace_back(Gate(Cnot{2, 3}));  // crosses the support, blocks wire 2
  bc.items.emplace_back(Gate(Rz{2, 0.9}));
  bc.items.emplace_back(Gate(Rz{1, 0.9}));
  bc.declared_phase = 0.3;
  const Matrix before = unitary_of(bc).matrix();
  const int absorbed = absorb_boundary(bc);
  EXPECT_EQ(absorbed, 4);
  EXPECT_LT((unitary_of(bc).matrix() - before).norm(), 1e-12);
  int gates = 0;
  for (const auto& it : bc.items) gates += std::holds_alternative<Gate>(it) ? 1 : 0;
  EXPECT_EQ(gates, 3);
}

TEST(Synthesize, ExactOnHaarInputs) {
  for (int n = 1; n <= 5; ++n) {
    for (int opt = 0; opt <= 2; ++opt) {
      const Unitary u = haar_unitary(n, 40 + static_cast<std::uint64_t>(n));
      SynthesisOptions o;
      o.opt_level = opt;
      o.check_emitters = n <= 3;
      const SynthesisResult r = synthesize(u, o);
      EXPECT_LE(r.report.distance, 1e-8) << "n=" << n << " opt=" << opt;
      // The circuit carries the full phase, not just the projective class.
      EXPECT_LE((unitary_of(r.circuit).matrix() - u.matrix()).norm(), 1e-8 * u.dim());
      for (const Gate& g : r.circuit.gates()) EXPECT_FALSE(std::holds_alternative<FSwap>(g.op));
      int sum = 0;
      for (const auto& [k, v] : r.report.cnot_by_stage) sum += v;
      EXPECT_EQ(sum, r.report.total_cnot);
      EXPECT_EQ(r.report.total_cnot, count(r.circuit).cnot);
    }
  }
}

TEST(Synthesize, CountsMatchFormulaAtOptOne) {
  for (int n = 2; n <= 5; ++n) {
    SynthesisOptions o;
    o.check_emitters = false;
    const SynthesisResult r = synthesize(haar_unitary(n, 7), o);
    EXPECT_EQ(r.report.total_cnot, formula_t(n)) << n;
    if (n >= 3) {
      EXPECT_EQ(r.report.cnot_by_stage.at("exp_h"), formula_c_h(n));
      EXPECT_EQ(r.report.cnot_by_stage.at("exp_f"), 2 * formula_c_f(n));
    }
  }
}

TEST(Synthesize, OptLevelsAreOrdered) {
  for (int n = 3; n <= 4; ++n) {
    int prev = 1 << 30;
    for (int opt = 0; opt <= 2; ++opt) {
      SynthesisOptions o;
      o.opt_level = opt;
      o.check_emitters = false;
      const int c = synthesize(haar_unitary(n, 9), o).report.total_cnot;
      EXPECT_LE(c, prev) << "n=" << n << " opt=" << opt;
      prev = c;
    }
  }
}

TEST(Synthesize, IdentityAndLocalInputsAreCheap) {
  const SynthesisResult id = synthesize(Unitary::identity(4));
  EXPECT_EQ(id.report.total_cnot, 0);
  EXPECT_LE(id.report.distance, 1e-12);
  const Matrix loc = kron(haar_unitary(1, 1).matrix(), kron(haar_unitary(1, 2).matrix(),
                                                            haar_unitary(1, 3).matrix()));
  const SynthesisResult r = synthesize(Unitary(loc));
  EXPECT_LE(r.report.distance, 1e-8);
  EXPECT_LT(r.report.total_cnot, formula_t(3));
}

TEST(Synthesize, Deterministic) {
  const Unitary u = haar_unitary(4, 11);
  SynthesisOptions o;
  o.check_emitters = false;
  const Circuit a = synthesize(u, o).circuit;
  const Circuit b = synthesize(u, o).circuit;
  EXPECT_EQ(a.gates(), b.gates());
}

TEST(Synthesize, RejectsBadOptions) {
  SynthesisOptions o;
  o.opt_level = 3;
  EXPECT_THROW(synthesize(haar_unitary(2, 1), o), InvalidArgument);
}

}  // namespace
}  // namespace cartan
