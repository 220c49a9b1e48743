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

#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "qopt/circuit.h"

namespace qopt::test_support {

/// Random CNOT+H circuit on n wires with up to max_gates gates. About half
/// the gates are CNOTs; when multi_target is set a CNOT may fan out to
/// several targets.
inline Circuit random_circuit(std::mt19937_64 &rng, std::size_t n, std::size_t max_gates, bool multi_target = true) {
    std::uniform_int_distribution<std::size_t> gate_count(0, max_gates);
    std::uniform_int_distribution<QubitId> wire(0, static_cast<QubitId>(n - 1));
    std::bernoulli_distribution coin(0.5);
    std::vector<Gate> gates;
    std::size_t count = gate_count(rng);
    for (std::size_t k = 0; k < count; k++) {
        if (n < 2 || coin(rng)) {
            gates.push_back(Gate::h(wire(rng)));
            continue;
        }
        QubitId control = wire(rng);
        std::vector<QubitId> others;
        for (QubitId q = 0; q < n; q++) {
            if (q != control) {
                others.push_back(q);
            }
        }
        std::shuffle(others.begin(), others.end(), rng);
        std::size_t k_targets = 1;
        if (multi_target && coin(rng)) {
            k_targets = std::uniform_int_distribution<std::size_t>(1, others.size())(rng);
        }
        others.resize(k_targets);
        gates.push_back(Gate::cnot(control, others));
    }
    return Circuit(n, std::move(gates));
}

/// Biased towards rewrite opportunities: gates are drawn from a tiny pool so
/// repeated H pairs and same-control CNOTs are common.
inline Circuit random_redundant_circuit(std::mt19937_64 &rng, std::size_t n, std::size_t max_gates) {
    std::uniform_int_distribution<std::size_t> gate_count(0, max_gates);
    std::uniform_int_distribution<QubitId> wire(0, static_cast<QubitId>(std::min<std::size_t>(n, 3) - 1));
    std::uniform_int_distribution<QubitId> any_wire(0, static_cast<QubitId>(n - 1));
    std::bernoulli_distribution coin(0.5);
    std::vector<Gate> gates;
    std::size_t count = gate_count(rng);
    for (std::size_t k = 0; k < count; k++) {
        if (n < 2 || coin(rng)) {
            gates.push_back(Gate::h(wire(rng)));
            continue;
        }
        QubitId control = 0;
        QubitId target = any_wire(rng);
        if (target == control) {
            target = static_cast<QubitId>(n - 1);
        }
        gates.push_back(Gate::cnot(control, target));
    }
    return Circuit(n, std::move(gates));
}

}  // namespace qopt::test_support
