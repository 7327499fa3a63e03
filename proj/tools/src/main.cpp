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

#include <CLI11.hpp>
#include <iostream>
#include <map>

#include "cartan_cli/commands.hpp"

int main(int argc, char** argv) {
  using cartan::cli::Command;
  using cartan::cli::Format;

  CLI::App app{"Unitary to CNOT circuit compiler (recursive Cartan decomposition)"};
  app.require_subcommand(1);
  cartan::cli::RunConfig cfg;
  const std::map<std::string, Format> formats{{"qasm", Format::qasm}, {"json", Format::json}};

  auto* synth = app.add_subcommand("synth", "Synthesize a circuit for a unitary matrix file");
  synth->add_option("matrix", cfg.input, "Matrix file")->required();
  synth->add_option("--out", cfg.out, "Write the OpenQASM circuit here");
  synth->add_option("--opt", cfg.opt_level, "Optimization level")->check(CLI::Range(0, 2));
  synth->add_option("--tol", cfg.tol, "Distance tolerance per dimension");
  synth->add_option("--format", cfg.format, "Stdout payload: qasm or json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  synth->add_flag("--count-only", cfg.count_only, "Skip dense verification");

  auto* verify = app.add_subcommand("verify", "Check a circuit against a matrix");
  verify->add_option("matrix", cfg.input, "Matrix file")->required();
  verify->add_option("circuit", cfg.qasm, "OpenQASM file")->required();
  verify->add_option("--tol", cfg.tol, "Distance tolerance per dimension");
  verify->add_option("--format", cfg.format, "qasm (plain) or json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

  auto* random = app.add_subcommand("random", "Write a Haar-random unitary");
  random->add_option("--qubits", cfg.qubits, "Number of qubits")->required();
  random->add_option("--seed", cfg.seed, "Seed");
  random->add_option("--out", cfg.out, "Output file");

  auto* count = app.add_subcommand("count", "Print CNOT counts of several methods");
  count->add_option("--qubits", cfg.qubits, "Largest n")->required();
  count->add_option("--format", cfg.format, "qasm (plain table) or json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  count->add_option("--out", cfg.out, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cartan::cli::kExitInput;
  }

  if (synth->parsed()) cfg.command = Command::synth;
  if (verify->parsed()) cfg.command = Command::verify;
  if (random->parsed()) cfg.command = Command::random;
  if (count->parsed()) cfg.command = Command::count;
  return cartan::cli::run(cfg, std::cout, std::cerr);
}
