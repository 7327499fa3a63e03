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

#include "cartan_cli/commands.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <nlohmann/json.hpp>

#include "cartan/analytics.hpp"
#include "cartan/errors.hpp"
#include "cartan/matrix_io.hpp"
#include "cartan/qasm.hpp"
#include "cartan/synth.hpp"

namespace cartan::cli {

namespace {

using json = nlohmann::json;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot open " + path + " for writing");
  f << text;
  if (!f) throw InvalidArgument("write to " + path + " failed");
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out.empty()) {
    out << text;
  } else {
    write_text(cfg.out, text);
  }
}

Unitary load_unitary(const RunConfig& cfg) {
  if (cfg.input.empty()) throw InvalidArgument("no input matrix given");
  return Unitary::checked(read_matrix_file(cfg.input), cfg.tol);
}

std::int64_t bound_for(int n) { return n >= 2 ? formula_t(n) : 0; }

}  // namespace

void check_config(const RunConfig& cfg) {
  if (!(cfg.tol > 0)) throw InvalidArgument("--tol must be positive");
  if (cfg.opt_level < 0 || cfg.opt_level > 2) throw InvalidArgument("--opt must be 0, 1 or 2");
}

int cmd_synth(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Unitary u = load_unitary(cfg);
  const int n = u.qubits();
  SynthesisOptions opts;
  opts.opt_level = cfg.opt_level;
  opts.verify = !cfg.count_only;

  const auto t0 = std::chrono::steady_clock::now();
  const SynthesisResult r = synthesize(u, opts);
  const auto t1 = std::chrono::steady_clock::now();

  const std::int64_t bound = bound_for(n);
  json report = {
      {"qubits", n},
      {"cnot_count", r.report.total_cnot},
      {"formula_bound", bound},
      {"distance", cfg.count_only ? json(nullptr) : json(r.report.distance)},
      {"elapsed_ms", std::chrono::duration<double, std::milli>(t1 - t0).count()},
      {"opt_level", cfg.opt_level},
  };
  if (cfg.format == Format::json) {
    out << report.dump(2) << "\n";
    if (!cfg.out.empty()) write_text(cfg.out, to_qasm(r.circuit));
  } else {
    emit(cfg, out, to_qasm(r.circuit));
    err << report.dump() << "\n";
  }

  const double limit = cfg.tol * static_cast<double>(u.dim());
  if (!cfg.count_only && !(r.report.distance <= limit)) {
    err << "verification failed: distance " << r.report.distance << " > " << limit << "\n";
    return kExitVerification;
  }
  if (cfg.opt_level >= 1 && r.report.total_cnot > bound) {
    err << "verification failed: " << r.report.total_cnot << " CNOTs exceed the bound " << bound
        << "\n";
    return kExitVerification;
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Unitary u = load_unitary(cfg);
  if (cfg.qasm.empty()) throw InvalidArgument("no circuit given");
  const Circuit c = parse_qasm(read_text(cfg.qasm));
  if (c.qubits() != u.qubits()) {
    throw InvalidArgument("circuit has " + std::to_string(c.qubits()) + " qubits, matrix has " +
                          std::to_string(u.qubits()));
  }
  const double d = dist_phase(unitary_of(c), u);
  const double limit = cfg.tol * static_cast<double>(u.dim());
  if (cfg.format == Format::json) {
    out << json{{"qubits", u.qubits()}, {"distance", d}, {"limit", limit}}.dump(2) << "\n";
  } else {
    out << std::setprecision(6) << d << "\n";
  }
  if (!(d <= limit)) {
    err << "verification failed: distance " << d << " > " << limit << "\n";
    return kExitVerification;
  }
  return kExitOk;
}

int cmd_random(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.qubits < 1 || cfg.qubits > 14) throw InvalidArgument("--qubits must be in [1, 14]");
  emit(cfg, out, format_matrix(haar_unitary(cfg.qubits, cfg.seed).matrix()));
  return kExitOk;
}

int cmd_count(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.qubits < 2 || cfg.qubits > kMaxFormulaQubits) {
    throw InvalidArgument("--qubits must be in [2, " + std::to_string(kMaxFormulaQubits) + "]");
  }
  std::ostringstream s;
  if (cfg.format == Format::json) {
    json rows = json::array();
    for (int n = 2; n <= cfg.qubits; ++n) {
      for (const auto& r : comparison_table(n)) {
        rows.push_back({{"n", r.n}, {"method", r.method}, {"cnots", r.cnots}});
      }
    }
    s << rows.dump(2) << "\n";
  } else {
    s << std::setw(3) << "n";
    for (const char* m : {"CSD", "QSD", "KG", "bound"}) s << std::setw(22) << m;
    s << "\n";
    for (int n = 2; n <= cfg.qubits; ++n) {
      s << std::setw(3) << n;
      for (const auto& r : comparison_table(n)) s << std::setw(22) << r.cnots;
      s << "\n";
    }
    s << "KG / bound leading coefficients: " << kLeadingRatioToBound.first << "/"
      << kLeadingRatioToBound.second << "\n";
  }
  emit(cfg, out, s.str());
  return kExitOk;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    check_config(cfg);
    switch (cfg.command) {
      case Command::synth:
        return cmd_synth(cfg, out, err);
      case Command::verify:
        return cmd_verify(cfg, out, err);
      case Command::random:
        return cmd_random(cfg, out, err);
      case Command::count:
        return cmd_count(cfg, out, err);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericalValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    // Decomposition or emitter failures: the input was fine, the result is not.
    err << "error: " << e.what() << "\n";
    return kExitVerification;
  }
  return kExitInput;
}

}  // namespace cartan::cli
