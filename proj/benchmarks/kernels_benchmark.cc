// Copyright 2026 The qopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference kernels against their OpenMP counterparts, plus the
// per-step cost of the rewrite engine that dominates training time.

#include <benchmark/benchmark.h>

#include <random>

#include "qopt/bench.h"
#include "qopt/rewrite.h"

namespace {

using namespace qopt;

Circuit bench_circuit(std::size_t n) {
    std::mt19937_64 rng(n);
    std::uniform_int_distribution<QubitId> wire(0, static_cast<QubitId>(n - 1));
    std::vector<Gate> gates;
    for (int i = 0; i < 40; i++) {
        QubitId a = wire(rng);
        QubitId b = wire(rng);
        gates.push_back(a == b ? Gate::h(a) : Gate::cnot(a, b));
    }
    return Circuit(n, std::move(gates));
}

void BM_SimulateSerial(benchmark::State &state) {
    Circuit c = bench_circuit(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(simulate(c, 1));
}

void BM_SimulateParallel(benchmark::State &state) {
    Circuit c = bench_circuit(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(simulate_parallel(c, 1));
}

void BM_EquivalentSerial(benchmark::State &state) {
    Circuit c = bench_circuit(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(equivalent(c, c));
}

void BM_EquivalentParallel(benchmark::State &state) {
    Circuit c = bench_circuit(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(equivalent_parallel(c, c));
}

void BM_FindMatchesBv(benchmark::State &state) {
    Circuit c = generate_bv(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(find_matches(c));
}

}  // namespace

BENCHMARK(BM_SimulateSerial)->Arg(6)->Arg(10)->Arg(12);
BENCHMARK(BM_SimulateParallel)->Arg(6)->Arg(10)->Arg(12);
BENCHMARK(BM_EquivalentSerial)->Arg(4)->Arg(6)->Arg(8);
BENCHMARK(BM_EquivalentParallel)->Arg(4)->Arg(6)->Arg(8);
BENCHMARK(BM_FindMatchesBv)->Arg(3)->Arg(12)->Arg(24);

BENCHMARK_MAIN();
