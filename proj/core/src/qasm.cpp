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

#include "cartan/qasm.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cartan/errors.hpp"
#include "cartan/kak.hpp"

namespace cartan {

namespace {

std::string num(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, r.ptr);
}

std::string reg(int q) { return "q[" + std::to_string(q - 1) + "]"; }

// u3(theta, phi, lambda) = e^{i(phi+lambda)/2} Rz(phi) Ry(theta) Rz(lambda).
struct U3 {
  double theta, phi, lambda, phase;
};

U3 to_u3(const Eigen::Matrix2cd& m) {
  const Su2Angles a = decompose_su2(Unitary::unchecked(Matrix(m)));
  return {a.beta, a.alpha, a.gamma, a.delta - (a.alpha + a.gamma) / 2};
}

Eigen::Matrix2cd u3_matrix(double theta, double phi, double lambda) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Eigen::Matrix2cd m;
  m << c, -std::polar(s, lambda), std::polar(s, phi), std::polar(c, phi + lambda);
  return m;
}

}  // namespace

std::string to_qasm(const Circuit& c) {
  std::ostringstream out;
  out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" << c.qubits() << "];\n";
  double phase = c.declared_phase();
  for (const Gate& g : c.gates()) {
    if (const auto* x = std::get_if<Cnot>(&g.op)) {
      out << "cx " << reg(x->control) << "," << reg(x->target) << ";\n";
    } else if (const auto* x = std::get_if<Swap>(&g.op)) {
      out << "swap " << reg(x->a) << "," << reg(x->b) << ";\n";
    } else if (std::holds_alternative<FSwap>(g.op)) {
      throw PreconditionError("to_qasm: expand fSWAP gates first");
    } else if (const auto* x = std::get_if<Rx>(&g.op)) {
      out << "rx(" << num(x->angle) << ") " << reg(x->qubit) << ";\n";
    } else if (const auto* x = std::get_if<Ry>(&g.op)) {
      out << "ry(" << num(x->angle) << ") " << reg(x->qubit) << ";\n";
    } else if (const auto* x = std::get_if<Rz>(&g.op)) {
      out << "rz(" << num(x->angle) << ") " << reg(x->qubit) << ";\n";
    } else if (const auto* x = std::get_if<U1Q>(&g.op)) {
      const U3 u = to_u3(x->m);
      phase += u.phase;
      out << "u3(" << num(u.theta) << "," << num(u.phi) << "," << num(u.lambda) << ") "
          << reg(x->qubit) << ";\n";
    } else if (const auto* x = std::get_if<GPhase>(&g.op)) {
      phase += x->angle;
    }
  }
  out << "// global-phase: " << num(phase) << "\n";
  return out.str();
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Angle expressions: a number, optionally "pi", "-pi", "pi/k", "k*pi", "-pi/k".
double parse_angle(std::string_view s, int line) {
  s = trim(s);
  double sign = 1.0;
  if (!s.empty() && s.front() == '-') {
    sign = -1.0;
    s = trim(s.substr(1));
  }
  auto number = [&](std::string_view t) {
    t = trim(t);
    double v = 0;
    const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
    if (r.ec != std::errc() || r.ptr != t.data() + t.size()) {
      throw ParseError("line " + std::to_string(line) + ": bad angle '" + std::string(t) +
                       "'");
    }
    return v;
  };
  const auto pi_pos = s.find("pi");
  if (pi_pos == std::string_view::npos) return sign * number(s);
  double v = std::numbers::pi;
  const std::string_view before = trim(s.substr(0, pi_pos));
  const std::string_view after = trim(s.substr(pi_pos + 2));
  if (!before.empty()) {
    if (before.back() != '*') throw ParseError("line " + std::to_string(line) + ": bad angle");
    v *= number(before.substr(0, before.size() - 1));
  }
  if (!after.empty()) {
    if (after.front() != '/') throw ParseError("line " + std::to_string(line) + ": bad angle");
    v /= number(after.substr(1));
  }
  return sign * v;
}

int parse_qubit(std::string_view s, int n, int line) {
  s = trim(s);
  const auto lb = s.find('[');
  const auto rb = s.find(']');
  if (lb == std::string_view::npos || rb == std::string_view::npos || rb < lb) {
    throw ParseError("line " + std::to_string(line) + ": bad qubit '" + std::string(s) + "'");
  }
  int idx = -1;
  const auto body = s.substr(lb + 1, rb - lb - 1);
  const auto r = std::from_chars(body.data(), body.data() + body.size(), idx);
  if (r.ec != std::errc() || idx < 0 || idx >= n) {
    throw ParseError("line " + std::to_string(line) + ": qubit index out of range");
  }
  return idx + 1;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

Circuit parse_qasm(std::string_view text) {
  Circuit c;
  int n = -1;
  bool have_phase = false;
  double phase = 0.0;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (line.starts_with("//")) {
      constexpr std::string_view key = "// global-phase:";
      if (line.starts_with(key)) {
        phase = parse_angle(line.substr(key.size()), line_no);
        have_phase = true;
      }
      continue;
    }
    if (line.back() != ';') {
      throw ParseError("line " + std::to_string(line_no) + ": missing ';'");
    }
    line.remove_suffix(1);
    line = trim(line);
    if (line.starts_with("OPENQASM") || line.starts_with("include")) continue;
    if (line.starts_with("qreg")) {
      const auto lb = line.find('[');
      const auto rb = line.find(']');
      if (lb == std::string_view::npos || rb == std::string_view::npos) {
        throw ParseError("line " + std::to_string(line_no) + ": bad qreg");
      }
      const auto body = line.substr(lb + 1, rb - lb - 1);
      const auto r = std::from_chars(body.data(), body.data() + body.size(), n);
      if (r.ec != std::errc() || n < 1) {
        throw ParseError("line " + std::to_string(line_no) + ": bad qreg size");
      }
      c = Circuit(n);
      continue;
    }
    if (n < 0) throw ParseError("line " + std::to_string(line_no) + ": gate before qreg");

    std::string_view name = line;
    std::vector<double> params;
    std::string_view args;
    if (const auto lp = line.find('('); lp != std::string_view::npos &&
                                        lp < line.find(' ')) {
      const auto rp = line.find(')', lp);
      if (rp == std::string_view::npos) {
        throw ParseError("line " + std::to_string(line_no) + ": unbalanced '('");
      }
      name = line.substr(0, lp);
      for (auto p : split(line.substr(lp + 1, rp - lp - 1), ',')) {
        params.push_back(parse_angle(p, line_no));
      }
      args = line.substr(rp + 1);
    } else {
      const auto sp = line.find(' ');
      if (sp == std::string_view::npos) {
        throw ParseError("line " + std::to_string(line_no) + ": missing operands");
      }
      name = line.substr(0, sp);
      args = line.substr(sp + 1);
    }
    name = trim(name);
    std::vector<int> qs;
    for (auto a : split(trim(args), ',')) qs.push_back(parse_qubit(a, n, line_no));

    auto need = [&](std::size_t nq, std::size_t np) {
      if (qs.size() != nq || params.size() != np) {
        throw ParseError("line " + std::to_string(line_no) + ": wrong arity for '" +
                         std::string(name) + "'");
      }
    };
    const double pi = std::numbers::pi;
    auto fixed = [&](const Eigen::Matrix2cd& m) {
      need(1, 0);
      c.add(U1Q{qs[0], m});
    };
    Eigen::Matrix2cd m;
    try {
      if (name == "cx" || name == "CX") {
        need(2, 0);
        c.add(Cnot{qs[0], qs[1]});
      } else if (name == "swap") {
        need(2, 0);
        c.add(Swap{qs[0], qs[1]});
      } else if (name == "rx") {
        need(1, 1);
        c.add(Rx{qs[0], params[0]});
      } else if (name == "ry") {
        need(1, 1);
        c.add(Ry{qs[0], params[0]});
      } else if (name == "rz") {
        need(1, 1);
        c.add(Rz{qs[0], params[0]});
      } else if (name == "u3" || name == "U") {
        need(1, 3);
        c.add(U1Q{qs[0], u3_matrix(params[0], params[1], params[2])});
      } else if (name == "h") {
        fixed(hadamard());
      } else if (name == "x") {
        m << 0, 1, 1, 0;
        fixed(m);
      } else if (name == "y") {
        m << 0, Complex(0, -1), Complex(0, 1), 0;
        fixed(m);
      } else if (name == "z") {
        m << 1, 0, 0, -1;
        fixed(m);
      } else if (name == "s" || name == "sdg" || name == "t" || name == "tdg") {
        const double a = (name[0] == 's' ? pi / 2 : pi / 4) * (name.size() == 3 ? -1 : 1);
        m << 1, 0, 0, std::polar(1.0, a);
        fixed(m);
      } else {
        throw ParseError("line " + std::to_string(line_no) + ": unsupported gate '" +
                         std::string(name) + "'");
      }
    } catch (const InvalidArgument& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (n < 0) throw ParseError("no qreg declaration");
  if (have_phase) c.set_declared_phase(phase);
  return c;
}

}  // namespace cartan
