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

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qopt {

using QubitId = std::uint32_t;

/// Raised when a gate or circuit violates its structural invariants.
struct CircuitError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised by parse_circuit; the message carries the offending line number.
struct ParseError : CircuitError {
    ParseError(std::size_t line, const std::string &what);
    std::size_t line;
};

enum class GateKind : std::uint8_t { H, CNOT };

/// A Hadamard on one wire, or a CNOT with one control and one or more
/// targets. A k-target CNOT stands for k two-qubit CNOTs sharing the
/// control; targets are kept sorted ascending so equal gates compare equal.
class Gate {
   public:
    static Gate h(QubitId wire);
    static Gate cnot(QubitId control, QubitId target);
    static Gate cnot(QubitId control, std::vector<QubitId> targets);

    GateKind kind() const { return kind_; }
    bool is_h() const { return kind_ == GateKind::H; }
    bool is_cnot() const { return kind_ == GateKind::CNOT; }

    /// The H wire, or the CNOT control.
    QubitId wire() const { return wire_; }
    QubitId control() const { return wire_; }
    std::span<const QubitId> targets() const { return targets_; }

    bool touches(QubitId q) const;
    /// Control/H wire first, then targets.
    std::vector<QubitId> wires() const;

    bool operator==(const Gate &) const = default;

   private:
    Gate(GateKind kind, QubitId wire, std::vector<QubitId> targets);

    GateKind kind_;
    QubitId wire_;
    std::vector<QubitId> targets_;
};

/// An ordered gate list over a fixed number of wires. Immutable once built.
class Circuit {
   public:
    /// Throws CircuitError if n_qubits == 0 or any gate touches a wire
    /// outside [0, n_qubits).
    explicit Circuit(std::size_t n_qubits, std::vector<Gate> gates = {});

    std::size_t n_qubits() const { return n_qubits_; }
    const std::vector<Gate> &gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }
    bool empty() const { return gates_.empty(); }
    const Gate &operator[](std::size_t i) const { return gates_[i]; }

    bool operator==(const Circuit &) const = default;

   private:
    std::size_t n_qubits_;
    std::vector<Gate> gates_;
};

/// ASAP layer (1-based) for every gate, in program order.
struct Schedule {
    std::vector<std::size_t> layer_of_gate;

    std::size_t depth() const;
    bool operator==(const Schedule &) const = default;
};

Schedule schedule_asap(const Circuit &c);

/// Number of ASAP layers; a multi-target CNOT occupies a single layer.
std::size_t depth(const Circuit &c);

/// H gates plus, for each CNOT, its number of targets.
std::size_t gate_count(const Circuit &c);

/// Two-qubit gates acting on the unordered pair {a, b}. Only control-target
/// pairs interact; two targets of one CNOT do not. Throws CircuitError when
/// a == b or either wire is out of range.
std::size_t pair_strength(const Circuit &c, QubitId a, QubitId b);

/// Mean pair_strength over all n(n-1)/2 unordered wire pairs; 0 for n < 2.
double interaction_strength(const Circuit &c);

/// The three figures every reward consumes.
struct Metrics {
    std::size_t depth = 0;
    std::size_t gate_count = 0;
    double interaction_strength = 0.0;

    bool operator==(const Metrics &) const = default;
};

Metrics metrics(const Circuit &c);

// Text format:
//   qubits <n>
//   h <w>
//   cx <control> <t1> [<t2> ...]
// '#' starts a comment, blank lines are ignored.
Circuit parse_circuit(std::string_view text);
std::string serialize_circuit(const Circuit &c);

Circuit read_circuit_file(const std::string &path);
void write_circuit_file(const std::string &path, const Circuit &c);

}  // namespace qopt
