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

#include "cartan/circuit.hpp"

#include <cmath>
#include <numbers>

#include "cartan/errors.hpp"
#include "cartan/kak.hpp"

namespace cartan {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

const char* to_string(Stage s) {
  switch (s) {
    case Stage::none:
      return "none";
    case Stage::exp_h:
      return "exp_h";
    case Stage::exp_f:
      return "exp_f";
    case Stage::recursion:
      return "recursion";
    case Stage::base:
      return "base";
  }
  return "?";
}

std::vector<int> Gate::qubits() const {
  return std::visit(
      overloaded{[](const Cnot& g) { return std::vector<int>{g.control, g.target}; },
                 [](const Swap& g) { return std::vector<int>{g.a, g.b}; },
                 [](const FSwap& g) { return std::vector<int>{g.a, g.b}; },
                 [](const Rx& g) { return std::vector<int>{g.qubit}; },
                 [](const Ry& g) { return std::vector<int>{g.qubit}; },
                 [](const Rz& g) { return std::vector<int>{g.qubit}; },
                 [](const U1Q& g) { return std::vector<int>{g.qubit}; },
                 [](const GPhase&) { return std::vector<int>{}; }},
      op);
}

Eigen::Matrix2cd hadamard() {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd h;
  h << r, r, r, -r;
  return h;
}

Eigen::Matrix2cd one_qubit_matrix(const Gate& g) {
  return std::visit(
      overloaded{[](const Rx& r) -> Eigen::Matrix2cd { return rx_matrix(r.angle); },
                 [](const Ry& r) -> Eigen::Matrix2cd { return ry_matrix(r.angle); },
                 [](const Rz& r) -> Eigen::Matrix2cd { return rz_matrix(r.angle); },
                 [](const U1Q& u) -> Eigen::Matrix2cd { return u.m; },
                 [](const auto&) -> Eigen::Matrix2cd {
                   throw InvalidArgument("not a one-qubit gate");
                 }},
      g.op);
}

void validate(const Gate& g, int qubits) {
  const auto qs = g.qubits();
  for (int q : qs) {
    if (q < 1 || q > qubits) {
      throw InvalidArgument("gate qubit " + std::to_string(q) + " outside [1, " +
                            std::to_string(qubits) + "]");
    }
  }
  if (qs.size() == 2 && qs[0] == qs[1]) {
    throw InvalidArgument("two-qubit gate on a single wire");
  }
  if (const auto* u = std::get_if<U1Q>(&g.op)) {
    const double res = (u->m.adjoint() * u->m - Eigen::Matrix2cd::Identity()).norm();
    if (!(res <= 1e-12 * 2)) throw InvalidArgument("U1Q payload is not unitary");
  }
}

void Circuit::add(Gate g) {
  validate(g, n_);
  gates_.push_back(std::move(g));
}

void Circuit::append(const Circuit& other) {
  if (other.n_ > n_) throw InvalidArgument("appended circuit has more qubits");
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
  phase_ += other.phase_;
}

void Circuit::tag(Stage s) {
  for (auto& g : gates_) g.stage = s;
}

namespace {

void apply_1q(Matrix& st, int n, int q, const Eigen::Matrix2cd& u) {
  const Eigen::Index bit = Eigen::Index{1} << (n - q);
  const Eigen::Index d = st.rows();
  for (Eigen::Index i = 0; i < d; ++i) {
    if (i & bit) continue;
    const Eigen::Index j = i | bit;
    for (Eigen::Index c = 0; c < st.cols(); ++c) {
      const Complex a = st(i, c), b = st(j, c);
      st(i, c) = u(0, 0) * a + u(0, 1) * b;
      st(j, c) = u(1, 0) * a + u(1, 1) * b;
    }
  }
}

void apply_cnot(Matrix& st, int n, int control, int target) {
  const Eigen::Index cb = Eigen::Index{1} << (n - control);
  const Eigen::Index tb = Eigen::Index{1} << (n - target);
  for (Eigen::Index i = 0; i < st.rows(); ++i) {
    if ((i & cb) && !(i & tb)) st.row(i).swap(st.row(i | tb));
  }
}

void apply_swap(Matrix& st, int n, int a, int b, bool fermionic) {
  const Eigen::Index ab = Eigen::Index{1} << (n - a);
  const Eigen::Index bb = Eigen::Index{1} << (n - b);
  for (Eigen::Index i = 0; i < st.rows(); ++i) {
    if ((i & ab) && !(i & bb)) st.row(i).swap(st.row((i & ~ab) | bb));
    if (fermionic && (i & ab) && (i & bb)) st.row(i) *= -1.0;
  }
}

}  // namespace

void apply_gates(const Circuit& c, Matrix& st) {
  const int n = c.qubits();
  for (const Gate& g : c.gates()) {
    std::visit(overloaded{[&](const Cnot& x) { apply_cnot(st, n, x.control, x.target); },
                          [&](const Swap& x) { apply_swap(st, n, x.a, x.b, false); },
                          [&](const FSwap& x) { apply_swap(st, n, x.a, x.b, true); },
                          [&](const GPhase& x) { st *= std::polar(1.0, x.angle); },
                          [&](const auto& x) {
                            apply_1q(st, n, x.qubit, one_qubit_matrix(Gate(x)));
                          }},
               g.op);
  }
}

Unitary unitary_of(const Circuit& c) {
  if (c.qubits() < 1 || c.qubits() > 14) {
    throw InvalidArgument("unitary_of supports 1..14 qubits");
  }
  for (const Gate& g : c.gates()) validate(g, c.qubits());
  const Eigen::Index d = Eigen::Index{1} << c.qubits();
  Matrix st = Matrix::Identity(d, d);
  apply_gates(c, st);
  st *= std::polar(1.0, c.declared_phase());
  return Unitary::unchecked(std::move(st));
}

ExpandedCircuit expand_fswap(const Circuit& c, FswapMode mode) {
  const int n = c.qubits();
  ExpandedCircuit out{Circuit(n), {}};
  out.circuit.set_declared_phase(c.declared_phase());
  std::vector<int> wire(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) wire[static_cast<std::size_t>(k)] = k + 1;
  auto w = [&](int q) { return wire[static_cast<std::size_t>(q - 1)]; };
  const Eigen::Matrix2cd h = hadamard();

  for (const Gate& g : c.gates()) {
    const Stage st = g.stage;
    if (const auto* f = std::get_if<FSwap>(&g.op)) {
      const int a = w(f->a), b = w(f->b);
      // CZ as H CNOT H on the current wires.
      auto cz = [&] {
        out.circuit.add(Gate(U1Q{b, h}, st));
        out.circuit.add(Gate(Cnot{a, b}, st));
        out.circuit.add(Gate(U1Q{b, h}, st));
      };
      if (mode == FswapMode::naive) {
        cz();
        out.circuit.add(Gate(Cnot{a, b}, st));
        out.circuit.add(Gate(Cnot{b, a}, st));
        out.circuit.add(Gate(Cnot{a, b}, st));
      } else {
        cz();
        std::swap(wire[static_cast<std::size_t>(f->a - 1)],
                  wire[static_cast<std::size_t>(f->b - 1)]);
      }
      continue;
    }
    Gate mapped = g;
    std::visit(overloaded{[&](Cnot& x) {
                            x.control = w(x.control);
                            x.target = w(x.target);
                          },
                          [&](Swap& x) {
                            x.a = w(x.a);
                            x.b = w(x.b);
                          },
                          [&](FSwap&) {},
                          [&](GPhase&) {},
                          [&](auto& x) { x.qubit = w(x.qubit); }},
               mapped.op);
    out.circuit.add(std::move(mapped));
  }
  out.wire_map = std::move(wire);
  return out;
}

CountReport count(const Circuit& c, FswapMode mode) {
  CountReport r;
  for (const Gate& g : c.gates()) {
    std::visit(overloaded{[&](const Cnot&) { ++r.cnot; }, [&](const Swap&) { ++r.swap; },
                          [&](const FSwap&) { ++r.fswap; }, [&](const GPhase&) {},
                          [&](const auto&) { ++r.one_qubit; }},
               g.op);
  }
  r.effective_cnot = r.cnot + 3 * r.swap + (mode == FswapMode::naive ? 4 : 1) * r.fswap;
  return r;
}

Circuit merge_single_qubit(const Circuit& c, double drop_tolerance) {
  const int n = c.qubits();
  Circuit out(n);
  out.set_declared_phase(c.declared_phase());
  struct Run {
    std::vector<Gate> gates;
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
  };
  std::vector<Run> runs(static_cast<std::size_t>(n));

  auto flush = [&](int q) {
    Run& r = runs[static_cast<std::size_t>(q - 1)];
    if (r.gates.empty()) return;
    const Complex tr = r.m.trace();
    const Complex ph = std::abs(tr) > 0 ? tr / std::abs(tr) : Complex(1, 0);
    if ((r.m - ph * Eigen::Matrix2cd::Identity()).norm() <= drop_tolerance) {
      out.add_phase(std::arg(ph));
    } else if (r.gates.size() == 1) {
      out.add(r.gates.front());
    } else {
      out.add(Gate(U1Q{q, r.m}, r.gates.front().stage));
    }
    r = Run{};
  };

  for (const Gate& g : c.gates()) {
    if (const auto* p = std::get_if<GPhase>(&g.op)) {
      out.add_phase(p->angle);
      continue;
    }
    const auto qs = g.qubits();
    if (qs.size() == 1) {
      Run& r = runs[static_cast<std::size_t>(qs[0] - 1)];
      r.m = one_qubit_matrix(g) * r.m;
      r.gates.push_back(g);
      continue;
    }
    for (int q : qs) flush(q);
    out.add(g);
  }
  for (int q = 1; q <= n; ++q) flush(q);
  return out;
}

}  // namespace cartan
