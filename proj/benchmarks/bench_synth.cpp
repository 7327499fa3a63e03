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

#include <benchmark/benchmark.h>

#include "cartan/kak.hpp"
#include "cartan/synth.hpp"

namespace cartan {
namespace {

void BM_Synthesize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int level = static_cast<int>(state.range(1));
  const Unitary u = haar_unitary(n, 1);
  SynthesisOptions o;
  o.opt_level = level;
  o.verify = false;
  o.check_emitters = false;
  int cnots = 0;
  for (auto _ : state) {
    const SynthesisResult r = synthesize(u, o);
    cnots = r.report.total_cnot;
    benchmark::DoNotOptimize(cnots);
  }
  state.counters["cnot"] = cnots;
}
BENCHMARK(BM_Synthesize)
    ->ArgsProduct({{2, 3, 4, 5, 6, 7}, {1}})
    ->Args({3, 2})
    ->Args({5, 2})
    ->Unit(benchmark::kMillisecond);

void BM_DecomposeFull(benchmark::State& state) {
  const Unitary u = haar_unitary(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(decompose_full(u));
}
BENCHMARK(BM_DecomposeFull)->DenseRange(3, 7)->Unit(benchmark::kMillisecond);

void BM_CSD(benchmark::State& state) {
  const Unitary u = haar_unitary(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(csd(u));
}
BENCHMARK(BM_CSD)->DenseRange(2, 8)->Unit(benchmark::kMicrosecond);

void BM_Eig(benchmark::State& state) {
  const Unitary u = haar_unitary(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(eig_unitary(u));
}
BENCHMARK(BM_Eig)->DenseRange(2, 8)->Unit(benchmark::kMicrosecond);

void BM_Verify(benchmark::State& state) {
  const Unitary u = haar_unitary(static_cast<int>(state.range(0)), 5);
  SynthesisOptions o;
  o.verify = false;
  o.check_emitters = false;
  const Circuit c = synthesize(u, o).circuit;
  for (auto _ : state) benchmark::DoNotOptimize(unitary_of(c));
}
BENCHMARK(BM_Verify)->DenseRange(3, 7)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace cartan

BENCHMARK_MAIN();
