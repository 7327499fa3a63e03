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

#include "cartan/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "cartan/errors.hpp"

namespace cartan {

using std::numbers::pi;

Circuit emit_block_form(double a, double b, int n, int head_qubit, int tail_qubit) {
  if (head_qubit == tail_qubit) throw InvalidArgument("block form needs two qubits");
  Circuit c(n);
  const Eigen::Matrix2cd h = hadamard();
  // H maps x_t to z_t; between the CNOTs z_t reads as z_h z_t.
  c.add(U1Q{tail_qubit, h});
  c.add(Cnot{head_qubit, tail_qubit});
  c.add(Rz{tail_qubit, 2.0 * b});
  c.add(Cnot{head_qubit, tail_qubit});
  c.add(Rz{tail_qubit, -2.0 * a});
  c.add(U1Q{tail_qubit, h});
  return c;
}

namespace {

struct SignedPauli {
  int power = 0;  // the operator is i^power * s
  PauliString s;
};

SignedPauli mul(const SignedPauli& a, const SignedPauli& b) {
  PauliProduct p = multiply(a.s, b.s);
  return {(a.power + b.power + p.phase_power) % 4, std::move(p.string)};
}

SignedPauli image(const Gate& g, int n, int qubit, Pauli letter) {
  auto one = [&](int q, Pauli p) { return PauliString::single(n, q, p); };
  const bool is_x = letter == Pauli::X;
  if (const auto* x = std::get_if<Cnot>(&g.op)) {
    if (is_x && qubit == x->control) return {0, one(qubit, Pauli::X).with(x->target, Pauli::X)};
    if (!is_x && qubit == x->target) return {0, one(qubit, Pauli::Z).with(x->control, Pauli::Z)};
  } else if (const auto* x = std::get_if<FSwap>(&g.op)) {
    if (qubit == x->a || qubit == x->b) {
      const int other = qubit == x->a ? x->b : x->a;
      if (is_x) return {0, one(qubit, Pauli::Z).with(other, Pauli::X)};
      return {0, one(other, Pauli::Z)};
    }
  } else {
    throw InvalidArgument("conjugation network may only hold CNOT and fSWAP gates");
  }
  return {0, one(qubit, letter)};
}

// g P g^dag.
SignedPauli conjugate(const SignedPauli& p, const Gate& g) {
  const int n = p.s.size();
  SignedPauli acc{p.power, PauliString::identity(n)};
  for (int k = 1; k <= n; ++k) {
    switch (p.s.at(k)) {
      case Pauli::I:
        break;
      case Pauli::X:
        acc = mul(acc, image(g, n, k, Pauli::X));
        break;
      case Pauli::Z:
        acc = mul(acc, image(g, n, k, Pauli::Z));
        break;
      case Pauli::Y:  // Y = i X Z
        acc.power = (acc.power + 1) % 4;
        acc = mul(mul(acc, image(g, n, k, Pauli::X)), image(g, n, k, Pauli::Z));
        break;
    }
  }
  return acc;
}

int sign_of(const SignedPauli& p) {
  if (p.power % 2 != 0) throw EmitterContractError("conjugated string is not Hermitian");
  return p.power == 0 ? 1 : -1;
}

std::vector<Gate> pair_network(const GeneratorPair& pair, int n) {
  const PauliString& p = pair.p;
  std::vector<int> tail_x;
  for (int j = 3; j <= n - 1; ++j) {
    if (p.at(j) == Pauli::X) tail_x.push_back(j);
  }
  const bool xy = pair.kind == PairKind::XYHead;
  std::vector<Gate> net;
  net.emplace_back(Cnot{1, 2});
  if (p.at(n) == Pauli::X) {
    for (int j : tail_x) net.emplace_back(Cnot{n, j});
    if (xy) net.emplace_back(Cnot{n, 1});
    return net;
  }
  if (tail_x.empty()) {
    if (!xy) throw InvalidArgument("the lone z1z2z_n term is not a pair");
    net.emplace_back(FSwap{1, n});
    return net;
  }
  const int top = tail_x.back();
  net.emplace_back(FSwap{top, n});
  for (int j : tail_x) {
    if (j != top) net.emplace_back(Cnot{n, j});
  }
  if (xy) net.emplace_back(Cnot{n, 1});
  return net;
}

void check_against_oracle(const Circuit& c, std::span<const double> coeffs,
                          std::span<const PauliString> strings, const char* what) {
  const Unitary got = unitary_of(c);
  const Unitary want = expm_pauli_combo(coeffs, strings);
  const double err = (got.matrix() - want.matrix()).norm();
  const double tol = 1e-11 * static_cast<double>(got.dim());
  if (!(err <= tol)) {
    throw EmitterContractError(std::string(what) + " deviates from its exponential by " +
                               std::to_string(err));
  }
}

}  // namespace

Circuit emit_pair_exponential(const EmitterSpec& spec, bool check) {
  const int n = spec.n;
  const auto& pair = spec.pair;
  if (n < 3 || pair.p.size() != n || pair.q.size() != n) {
    throw InvalidArgument("pair emitter needs strings on n >= 3 qubits");
  }
  if (!pair.p.commutes_with(pair.q)) throw InvalidArgument("pair strings do not commute");
  const std::vector<Gate> net = pair_network(pair, n);

  SignedPauli p{0, pair.p}, q{0, pair.q};
  for (const Gate& g : net) {
    p = conjugate(p, g);
    q = conjugate(q, g);
  }
  // One image must be +-x_t and the other +-z_c x_t.
  auto is_single_x = [](const PauliString& s) {
    if (s.weight() != 1) return 0;
    for (int k = 1; k <= s.size(); ++k) {
      if (s.at(k) == Pauli::X) return k;
    }
    return 0;
  };
  const SignedPauli* sx = &p;
  const SignedPauli* szx = &q;
  double ax = spec.a, azx = spec.b;
  if (!is_single_x(p.s)) {
    std::swap(sx, szx);
    std::swap(ax, azx);
  }
  const int t = is_single_x(sx->s);
  int c = 0;
  if (t != 0 && szx->s.weight() == 2 && szx->s.at(t) == Pauli::X) {
    for (int k = 1; k <= n; ++k) {
      if (szx->s.at(k) == Pauli::Z) c = k;
    }
  }
  if (t == 0 || c == 0) {
    throw EmitterContractError("network does not reduce " + pair.p.pretty() + ", " +
                               pair.q.pretty() + " to a block-form pair");
  }
  const double alpha = sign_of(*sx) * ax;
  const double beta = sign_of(*szx) * azx;

  Circuit out(n);
  for (const Gate& g : net) out.add(g);
  out.append(emit_block_form(alpha, -beta, n, c, t));
  for (auto it = net.rbegin(); it != net.rend(); ++it) out.add(*it);

  if (check) {
    const double coeffs[] = {spec.a, spec.b};
    const PauliString strings[] = {pair.p, pair.q};
    check_against_oracle(out, coeffs, strings, "pair emitter");
  }
  return out;
}

Circuit emit_diag_singleton(double a, int n, bool check) {
  if (n < 3) throw InvalidArgument("emit_diag_singleton needs n >= 3");
  Circuit c(n);
  c.add(Cnot{1, 2});
  c.add(Cnot{2, n});
  c.add(Rz{n, -2.0 * a});
  c.add(Cnot{2, n});
  c.add(Cnot{1, 2});
  if (check) {
    const double coeffs[] = {a};
    const PauliString strings[] = {
        PauliString::identity(n).with(1, Pauli::Z).with(2, Pauli::Z).with(n, Pauli::Z)};
    check_against_oracle(c, coeffs, strings, "singleton emitter");
  }
  return c;
}

namespace {

double coeff_of(const PauliCoeffs& m, const PauliString& s) {
  const auto it = m.find(s);
  return it == m.end() ? 0.0 : it->second;
}

void require_support(const PauliCoeffs& coeffs, const GeneratorSet& gs) {
  const std::set<PauliString> members(gs.members.begin(), gs.members.end());
  for (const auto& [s, v] : coeffs) {
    if (!members.count(s)) {
      throw InvalidArgument(s.pretty() + " is not in " + to_string(gs.kind) + "(" +
                            std::to_string(gs.level) + ")");
    }
  }
}

Circuit emit_grouped(const PauliCoeffs& coeffs, int n, GeneratorKind kind, double prune,
                     bool check) {
  if (n < 3) throw InvalidArgument("exponential emitters need n >= 3");
  const GeneratorSet gs = build_generators(n, kind);
  require_support(coeffs, gs);
  const PairGrouping groups = group_pairs(gs);
  Circuit out(n);
  for (const auto& pair : groups.pairs) {
    const double a = coeff_of(coeffs, pair.p);
    const double b = coeff_of(coeffs, pair.q);
    if (std::max(std::abs(a), std::abs(b)) <= prune) continue;
    out.append(emit_pair_exponential({pair, a, b, n}, check));
  }
  if (groups.singleton) {
    const double a = coeff_of(coeffs, *groups.singleton);
    if (std::abs(a) > prune) out.append(emit_diag_singleton(a, n, check));
  }
  return out;
}

}  // namespace

Circuit emit_exp_h(const PauliCoeffs& y, int n, double prune, bool check) {
  return emit_grouped(y, n, GeneratorKind::h, prune, check);
}

Circuit emit_exp_f(const PauliCoeffs& z, int n, double prune, bool check) {
  return emit_grouped(z, n, GeneratorKind::f, prune, check);
}

Circuit emit_canonical_su4(double a, double b, double c, int n, int q1, int q2) {
  Circuit out(n);
  out.add(Rz{q2, pi / 2});
  out.add(Cnot{q2, q1});
  out.add(Rz{q1, pi / 2 - 2 * c});
  out.add(Ry{q2, pi / 2 - 2 * a});
  out.add(Cnot{q1, q2});
  out.add(Ry{q2, 2 * b - pi / 2});
  out.add(Cnot{q2, q1});
  out.add(Rz{q1, -pi / 2});
  out.add_phase(pi / 4);
  return out;
}

namespace {

Matrix embed_on_support(const Gate& g, const std::vector<int>& support) {
  const int k = static_cast<int>(support.size());
  auto local = [&](int q) {
    const auto it = std::find(support.begin(), support.end(), q);
    return static_cast<int>(it - support.begin()) + 1;
  };
  Gate mapped = g;
  std::visit(
      [&](auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Cnot>) {
          x.control = local(x.control);
          x.target = local(x.target);
        } else if constexpr (std::is_same_v<T, Swap> || std::is_same_v<T, FSwap>) {
          x.a = local(x.a);
          x.b = local(x.b);
        } else if constexpr (!std::is_same_v<T, GPhase>) {
          x.qubit = local(x.qubit);
        }
      },
      mapped.op);
  Circuit c(k);
  c.add(mapped);
  return unitary_of(c).matrix();
}

bool inside(const std::vector<int>& qs, const std::vector<int>& support) {
  return std::all_of(qs.begin(), qs.end(), [&](int q) {
    return std::find(support.begin(), support.end(), q) != support.end();
  });
}

}  // namespace

int absorb_boundary(BlockCircuit& bc) {
  auto& items = bc.items;
  std::vector<bool> removed(items.size(), false);
  int absorbed = 0;
  for (std::size_t b = 0; b < items.size(); ++b) {
    auto* block = std::get_if<PendingBlock>(&items[b]);
    if (!block) continue;
    const auto& support = block->support;
    for (int dir : {-1, +1}) {
      std::set<int> blocked;
      for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(b) + dir;
           i >= 0 && i < static_cast<std::ptrdiff_t>(items.size()); i += dir) {
        const auto ui = static_cast<std::size_t>(i);
        if (removed[ui]) continue;
        if (blocked.size() == support.size()) break;
        std::vector<int> qs;
        const Gate* g = std::get_if<Gate>(&items[ui]);
        if (g) {
          if (std::holds_alternative<GPhase>(g->op)) continue;
          qs = g->qubits();
        } else {
          qs = std::get<PendingBlock>(items[ui]).support;
        }
        const bool free =
            std::none_of(qs.begin(), qs.end(), [&](int q) { return blocked.count(q) > 0; });
        if (g && free && inside(qs, support)) {
          const Matrix gm = embed_on_support(*g, support);
          block->m = dir < 0 ? Matrix(block->m * gm) : Matrix(gm * block->m);
          removed[ui] = true;
          ++absorbed;
          continue;
        }
        for (int q : qs) {
          if (std::find(support.begin(), support.end(), q) != support.end()) blocked.insert(q);
        }
      }
    }
  }
  std::vector<std::variant<Gate, PendingBlock>> kept;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!removed[i]) kept.push_back(std::move(items[i]));
  }
  items = std::move(kept);
  return absorbed;
}

Unitary unitary_of(const BlockCircuit& bc) {
  const Eigen::Index d = Eigen::Index{1} << bc.n;
  Matrix st = Matrix::Identity(d, d);
  for (const auto& item : bc.items) {
    if (const auto* g = std::get_if<Gate>(&item)) {
      Circuit c(bc.n);
      c.add(*g);
      apply_gates(c, st);
      continue;
    }
    const auto& blk = std::get<PendingBlock>(item);
    const int k = static_cast<int>(blk.support.size());
    // Apply blk.m on its wires: for each assignment of the other wires,
    // gather the 2^k amplitudes and multiply.
    std::vector<Eigen::Index> bits(static_cast<std::size_t>(k));
    Eigen::Index mask = 0;
    for (int j = 0; j < k; ++j) {
      bits[static_cast<std::size_t>(j)] = Eigen::Index{1} << (bc.n - blk.support[static_cast<std::size_t>(j)]);
      mask |= bits[static_cast<std::size_t>(j)];
    }
    const Eigen::Index sub = Eigen::Index{1} << k;
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(sub));
    for (Eigen::Index base = 0; base < d; ++base) {
      if (base & mask) continue;
      for (Eigen::Index s = 0; s < sub; ++s) {
        Eigen::Index full = base;
        for (int j = 0; j < k; ++j) {
          if (s >> (k - 1 - j) & 1) full |= bits[static_cast<std::size_t>(j)];
        }
        idx[static_cast<std::size_t>(s)] = full;
      }
      Matrix rows(sub, d);
      for (Eigen::Index s = 0; s < sub; ++s) rows.row(s) = st.row(idx[static_cast<std::size_t>(s)]);
      rows = (blk.m * rows).eval();
      for (Eigen::Index s = 0; s < sub; ++s) st.row(idx[static_cast<std::size_t>(s)]) = rows.row(s);
    }
  }
  st *= std::polar(1.0, bc.declared_phase);
  return Unitary::unchecked(std::move(st));
}

namespace {

struct Emitter {
  FswapMode mode;
  double prune;
  bool check;

  Stage stage_h(int depth) const { return depth == 0 ? Stage::exp_h : Stage::recursion; }
  Stage stage_f(int depth) const { return depth == 0 ? Stage::exp_f : Stage::recursion; }

  Circuit section(const Circuit& raw, Stage s) const {
    ExpandedCircuit e = expand_fswap(raw, mode);
    for (int k = 0; k < raw.qubits(); ++k) {
      if (e.wire_map[static_cast<std::size_t>(k)] != k + 1) {
        throw EmitterContractError("emitter section leaves wires permuted");
      }
    }
    e.circuit.tag(s);
    return std::move(e.circuit);
  }

  Circuit exp_z(const PauliCoeffs& z, int k, int depth) const {
    return section(emit_exp_f(z, k, prune, check), stage_f(depth));
  }
  Circuit exp_y(const PauliCoeffs& y, int k, int depth) const {
    return section(emit_exp_h(y, k, prune, check), stage_h(depth));
  }
  void phase_rz(Circuit& out, int k, double phi, int depth) const {
    if (std::abs(phi) > prune) out.add(Gate(Rz{k, -2.0 * phi}, stage_f(depth)));
  }

  void leaf1(Circuit& out, const Su2Angles& a) const {
    if (std::abs(a.gamma) > prune) out.add(Gate(Rz{1, a.gamma}, Stage::base));
    if (std::abs(a.beta) > prune) out.add(Gate(Ry{1, a.beta}, Stage::base));
    if (std::abs(a.alpha) > prune) out.add(Gate(Rz{1, a.alpha}, Stage::base));
    out.add_phase(a.delta);
  }

  void leaf2(Circuit& out, const Su4Factors& f) const {
    const bool trivial = std::all_of(f.coeffs.begin(), f.coeffs.end(),
                                     [&](double c) { return std::abs(c) <= prune; });
    if (trivial) {
      out.add(Gate(U1Q{1, f.l1 * f.l3}, Stage::base));
      out.add(Gate(U1Q{2, f.l2 * f.l4}, Stage::base));
    } else {
      out.add(Gate(U1Q{1, f.l3}, Stage::base));
      out.add(Gate(U1Q{2, f.l4}, Stage::base));
      Circuit core = emit_canonical_su4(f.coeffs[0], f.coeffs[1], f.coeffs[2], 2, 1, 2);
      core.tag(Stage::base);
      out.append(core);
      out.add(Gate(U1Q{1, f.l1}, Stage::base));
      out.add(Gate(U1Q{2, f.l2}, Stage::base));
    }
    out.add_phase(f.global_phase);
  }

  void node(Circuit& out, const DecompositionNode& nd, int depth) const {
    out.add_phase(nd.global_phase);
    std::visit(
        [&](const auto& b) {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, Leaf1q>) {
            leaf1(out, b.angles);
          } else if constexpr (std::is_same_v<T, Leaf2q>) {
            leaf2(out, b.factors);
          } else if constexpr (std::is_same_v<T, Branch>) {
            const int k = nd.n;
            node(out, b.children.at(3), depth + 1);
            out.append(exp_z(b.z2, k, depth));
            phase_rz(out, k, b.phis[2], depth);
            node(out, b.children.at(2), depth + 1);
            out.append(exp_y(b.y, k, depth));
            node(out, b.children.at(1), depth + 1);
            out.append(exp_z(b.z1, k, depth));
            phase_rz(out, k, b.phis[0], depth);
            node(out, b.children.at(0), depth + 1);
          }
        },
        nd.body);
  }

  // Level-by-level synthesis with boundary absorption.
  void absorbing(Circuit& out, const Matrix& u, int k, int depth,
                 const DecomposeOptions& dopt) const {
    const bool is_identity =
        k >= 2 && dist_phase(u, Matrix::Identity(u.rows(), u.cols())) <= dopt.identity_tolerance;
    if (k <= 2 || is_identity) {
      node(out, decompose_full(Unitary::unchecked(u), dopt), depth);
      return;
    }
    const double gamma = std::arg(u.determinant()) / static_cast<double>(u.rows());
    out.add_phase(gamma);
    const LevelSplit split = split_level(Unitary::unchecked(std::polar(1.0, -gamma) * u));

    std::vector<int> support(static_cast<std::size_t>(k - 1));
    for (int q = 1; q < k; ++q) support[static_cast<std::size_t>(q - 1)] = q;
    BlockCircuit bc;
    bc.n = k;
    auto gates = [&](const Circuit& c) {
      for (const Gate& g : c.gates()) bc.items.emplace_back(g);
      bc.declared_phase += c.declared_phase();
    };
    auto block = [&](std::size_t i) {
      bc.items.emplace_back(PendingBlock{support, split.children[i]});
    };
    Circuit rz(k);
    block(3);
    gates(exp_z(split.z2, k, depth));
    phase_rz(rz, k, split.phis[2], depth);
    gates(rz);
    block(2);
    gates(exp_y(split.y, k, depth));
    block(1);
    gates(exp_z(split.z1, k, depth));
    rz = Circuit(k);
    phase_rz(rz, k, split.phis[0], depth);
    gates(rz);
    block(0);

    absorb_boundary(bc);
    out.add_phase(bc.declared_phase);
    for (const auto& item : bc.items) {
      if (const auto* g = std::get_if<Gate>(&item)) {
        out.add(*g);
      } else {
        absorbing(out, std::get<PendingBlock>(item).m, k - 1, depth + 1, dopt);
      }
    }
  }
};

}  // namespace

Circuit emit_tree(const DecompositionNode& node, FswapMode mode, double prune, bool check) {
  Circuit out(node.n);
  Emitter{mode, prune, check}.node(out, node, 0);
  return out;
}

SynthesisResult synthesize(const Unitary& u, const SynthesisOptions& o) {
  if (o.opt_level < 0 || o.opt_level > 2) throw InvalidArgument("opt level must be 0, 1 or 2");
  const int n = u.qubits();
  if (n < 1) throw InvalidArgument("synthesize needs at least one qubit");
  DecomposeOptions dopt;
  dopt.identity_tolerance = o.prune;

  Circuit c;
  if (o.opt_level <= 1) {
    const DecompositionNode tree = decompose_full(u, dopt);
    c = emit_tree(tree, o.opt_level == 0 ? FswapMode::naive : FswapMode::elided, o.prune,
                  o.check_emitters);
  } else {
    const double bound = 1e-9 * static_cast<double>(u.dim());
    if (const double r = u.unitarity_residual(); !(r <= bound)) {
      throw NumericalValidationError("synthesize input is not unitary");
    }
    c = Circuit(n);
    Emitter{FswapMode::elided, o.prune, o.check_emitters}.absorbing(c, u.matrix(), n, 0, dopt);
  }
  if (o.opt_level >= 1) c = merge_single_qubit(c);

  SynthesisResult r{std::move(c), {}};
  SynthesisReport& rep = r.report;
  rep.opt_level = o.opt_level;
  rep.counts = count(r.circuit);
  rep.total_cnot = rep.counts.effective_cnot;
  for (const char* key : {"exp_h", "exp_f", "recursion", "base"}) rep.cnot_by_stage[key] = 0;
  for (const Gate& g : r.circuit.gates()) {
    if (std::holds_alternative<Cnot>(g.op) && g.stage != Stage::none) {
      ++rep.cnot_by_stage[to_string(g.stage)];
    }
  }
  if (o.verify) rep.distance = dist_phase(unitary_of(r.circuit), u);
  return r;
}

}  // namespace cartan
