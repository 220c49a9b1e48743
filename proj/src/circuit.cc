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

#include "qopt/circuit.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace qopt {

ParseError::ParseError(std::size_t line, const std::string &what)
    : CircuitError("line " + std::to_string(line) + ": " + what), line(line) {}

Gate::Gate(GateKind kind, QubitId wire, std::vector<QubitId> targets)
    : kind_(kind), wire_(wire), targets_(std::move(targets)) {}

Gate Gate::h(QubitId wire) { return Gate(GateKind::H, wire, {}); }

Gate Gate::cnot(QubitId control, QubitId target) { return cnot(control, std::vector<QubitId>{target}); }

Gate Gate::cnot(QubitId control, std::vector<QubitId> targets) {
    if (targets.empty()) {
        throw CircuitError("cnot needs at least one target");
    }
    std::sort(targets.begin(), targets.end());
    if (std::adjacent_find(targets.begin(), targets.end()) != targets.end()) {
        throw CircuitError("cnot targets must be distinct");
    }
    if (std::binary_search(targets.begin(), targets.end(), control)) {
        throw CircuitError("cnot control " + std::to_string(control) + " is also a target");
    }
    return Gate(GateKind::CNOT, control, std::move(targets));
}

bool Gate::touches(QubitId q) const {
    return q == wire_ || std::binary_search(targets_.begin(), targets_.end(), q);
}

std::vector<QubitId> Gate::wires() const {
    std::vector<QubitId> out;
    out.reserve(1 + targets_.size());
    out.push_back(wire_);
    out.insert(out.end(), targets_.begin(), targets_.end());
    return out;
}

Circuit::Circuit(std::size_t n_qubits, std::vector<Gate> gates) : n_qubits_(n_qubits), gates_(std::move(gates)) {
    if (n_qubits_ == 0) {
        throw CircuitError("circuit needs at least one qubit");
    }
    for (std::size_t i = 0; i < gates_.size(); i++) {
        const Gate &g = gates_[i];
        bool ok = g.wire() < n_qubits_;
        for (QubitId t : g.targets()) {
            ok = ok && t < n_qubits_;
        }
        if (!ok) {
            throw CircuitError("gate " + std::to_string(i) + " touches a wire outside [0, " +
                               std::to_string(n_qubits_) + ")");
        }
    }
}

std::size_t Schedule::depth() const {
    return layer_of_gate.empty() ? 0 : *std::max_element(layer_of_gate.begin(), layer_of_gate.end());
}

Schedule schedule_asap(const Circuit &c) {
    std::vector<std::size_t> wire_layer(c.n_qubits(), 0);
    Schedule s;
    s.layer_of_gate.reserve(c.size());
    for (const Gate &g : c.gates()) {
        std::size_t layer = wire_layer[g.wire()];
        for (QubitId t : g.targets()) {
            layer = std::max(layer, wire_layer[t]);
        }
        layer++;
        wire_layer[g.wire()] = layer;
        for (QubitId t : g.targets()) {
            wire_layer[t] = layer;
        }
        s.layer_of_gate.push_back(layer);
    }
    return s;
}

std::size_t depth(const Circuit &c) {
    std::vector<std::size_t> wire_layer(c.n_qubits(), 0);
    std::size_t result = 0;
    for (const Gate &g : c.gates()) {
        std::size_t layer = wire_layer[g.wire()];
        for (QubitId t : g.targets()) {
            layer = std::max(layer, wire_layer[t]);
        }
        layer++;
        wire_layer[g.wire()] = layer;
        for (QubitId t : g.targets()) {
            wire_layer[t] = layer;
        }
        result = std::max(result, layer);
    }
    return result;
}

namespace {

std::size_t two_qubit_total(const Circuit &c) {
    std::size_t total = 0;
    for (const Gate &g : c.gates()) {
        total += g.targets().size();
    }
    return total;
}

}  // namespace

std::size_t gate_count(const Circuit &c) {
    std::size_t count = 0;
    for (const Gate &g : c.gates()) {
        count += g.is_h() ? 1 : g.targets().size();
    }
    return count;
}

std::size_t pair_strength(const Circuit &c, QubitId a, QubitId b) {
    if (a == b) {
        throw CircuitError("pair_strength needs two distinct wires");
    }
    if (a >= c.n_qubits() || b >= c.n_qubits()) {
        throw CircuitError("pair_strength wire out of range");
    }
    std::size_t n = 0;
    for (const Gate &g : c.gates()) {
        if (!g.is_cnot()) {
            continue;
        }
        auto ts = g.targets();
        if ((g.control() == a && std::binary_search(ts.begin(), ts.end(), b)) ||
            (g.control() == b && std::binary_search(ts.begin(), ts.end(), a))) {
            n++;
        }
    }
    return n;
}

double interaction_strength(const Circuit &c) {
    std::size_t n = c.n_qubits();
    if (n < 2) {
        return 0.0;
    }
    // Every control-target pair is a distinct wire pair, so the sum over all
    // pairs is just the number of two-qubit gates.
    auto pairs = static_cast<double>(n * (n - 1) / 2);
    return static_cast<double>(two_qubit_total(c)) / pairs;
}

Metrics metrics(const Circuit &c) { return {depth(c), gate_count(c), interaction_strength(c)}; }

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
    std::vector<std::string_view> words;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            i++;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') {
            j++;
        }
        if (j > i) {
            words.push_back(line.substr(i, j - i));
        }
        i = j;
    }
    return words;
}

std::uint64_t parse_index(std::string_view word, std::size_t line_no) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
    if (ec != std::errc() || ptr != word.data() + word.size()) {
        throw ParseError(line_no, "expected a non-negative integer, got '" + std::string(word) + "'");
    }
    return v;
}

QubitId parse_wire(std::string_view word, std::size_t n_qubits, std::size_t line_no) {
    std::uint64_t v = parse_index(word, line_no);
    if (v >= n_qubits) {
        throw ParseError(line_no, "wire " + std::string(word) + " out of range for " + std::to_string(n_qubits) +
                                      " qubits");
    }
    return static_cast<QubitId>(v);
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
    std::size_t n_qubits = 0;
    std::vector<Gate> gates;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        line_no++;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        auto words = split_words(line);
        if (words.empty()) {
            continue;
        }
        if (n_qubits == 0) {
            if (words[0] != "qubits" || words.size() != 2) {
                throw ParseError(line_no, "first statement must be 'qubits <n>'");
            }
            n_qubits = parse_index(words[1], line_no);
            if (n_qubits == 0) {
                throw ParseError(line_no, "qubit count must be positive");
            }
            continue;
        }
        if (words[0] == "h") {
            if (words.size() != 2) {
                throw ParseError(line_no, "'h' takes exactly one wire");
            }
            gates.push_back(Gate::h(parse_wire(words[1], n_qubits, line_no)));
        } else if (words[0] == "cx") {
            if (words.size() < 3) {
                throw ParseError(line_no, "'cx' takes a control and at least one target");
            }
            QubitId control = parse_wire(words[1], n_qubits, line_no);
            std::vector<QubitId> targets;
            for (std::size_t k = 2; k < words.size(); k++) {
                targets.push_back(parse_wire(words[k], n_qubits, line_no));
            }
            try {
                gates.push_back(Gate::cnot(control, std::move(targets)));
            } catch (const CircuitError &e) {
                throw ParseError(line_no, e.what());
            }
        } else {
            throw ParseError(line_no, "unknown statement '" + std::string(words[0]) + "'");
        }
    }
    if (n_qubits == 0) {
        throw ParseError(line_no, "missing 'qubits <n>' header");
    }
    return Circuit(n_qubits, std::move(gates));
}

std::string serialize_circuit(const Circuit &c) {
    std::string out = "qubits " + std::to_string(c.n_qubits()) + "\n";
    for (const Gate &g : c.gates()) {
        if (g.is_h()) {
            out += "h " + std::to_string(g.wire()) + "\n";
        } else {
            out += "cx " + std::to_string(g.control());
            for (QubitId t : g.targets()) {
                out += " " + std::to_string(t);
            }
            out += "\n";
        }
    }
    return out;
}

Circuit read_circuit_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_circuit(buf.str());
}

void write_circuit_file(const std::string &path, const Circuit &c) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << serialize_circuit(c);
    out.flush();
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
}

}  // namespace qopt
