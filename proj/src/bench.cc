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

#include "qopt/bench.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <exception>
#include <string>
#include <unordered_set>

#include "qopt/rewrite.h"

namespace qopt {

Circuit generate_bv(std::size_t n) {
    if (n < 2) {
        throw std::invalid_argument("qubits must be >= 2");
    }
    std::vector<Gate> gates;
    gates.reserve(3 * n - 1);
    for (std::size_t w = 0; w < n; w++) {
        gates.push_back(Gate::h(static_cast<QubitId>(w)));
    }
    for (std::size_t w = 0; w + 1 < n; w++) {
        gates.push_back(Gate::cnot(static_cast<QubitId>(w), static_cast<QubitId>(n - 1)));
    }
    for (std::size_t w = 0; w < n; w++) {
        gates.push_back(Gate::h(static_cast<QubitId>(w)));
    }
    return Circuit(n, std::move(gates));
}

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Statevector basis_state(const Circuit &c, std::uint64_t input) {
    if (c.n_qubits() > kMaxSimQubits) {
        throw TooLargeError("simulation capped at " + std::to_string(kMaxSimQubits) + " qubits, circuit has " +
                            std::to_string(c.n_qubits()));
    }
    std::uint64_t dim = std::uint64_t{1} << c.n_qubits();
    if (input >= dim) {
        throw std::out_of_range("basis state " + std::to_string(input) + " out of range");
    }
    Statevector v(dim);
    v[input] = 1.0;
    return v;
}

struct CnotMasks {
    std::uint64_t control;
    std::uint64_t flip;
    std::uint64_t lowest_target;
};

CnotMasks masks_of(const Gate &g) {
    CnotMasks m{std::uint64_t{1} << g.control(), 0, std::uint64_t{1} << g.targets()[0]};
    for (QubitId t : g.targets()) {
        m.flip |= std::uint64_t{1} << t;
    }
    return m;
}

// Pairs (i, i ^ flip) are visited once each: from the member whose lowest
// target bit is clear.

void apply_gate_serial(Statevector &v, const Gate &g) {
    auto dim = static_cast<std::int64_t>(v.size());
    if (g.is_h()) {
        std::uint64_t bit = std::uint64_t{1} << g.wire();
        for (std::int64_t i = 0; i < dim; i++) {
            auto u = static_cast<std::uint64_t>(i);
            if (u & bit) {
                continue;
            }
            Amplitude a = v[u];
            Amplitude b = v[u | bit];
            v[u] = (a + b) * kInvSqrt2;
            v[u | bit] = (a - b) * kInvSqrt2;
        }
        return;
    }
    CnotMasks m = masks_of(g);
    for (std::int64_t i = 0; i < dim; i++) {
        auto u = static_cast<std::uint64_t>(i);
        if ((u & m.control) && !(u & m.lowest_target)) {
            std::swap(v[u], v[u ^ m.flip]);
        }
    }
}

void apply_gate_parallel(Statevector &v, const Gate &g) {
    auto dim = static_cast<std::int64_t>(v.size());
    if (g.is_h()) {
        std::uint64_t bit = std::uint64_t{1} << g.wire();
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < dim; i++) {
            auto u = static_cast<std::uint64_t>(i);
            if (u & bit) {
                continue;
            }
            Amplitude a = v[u];
            Amplitude b = v[u | bit];
            v[u] = (a + b) * kInvSqrt2;
            v[u | bit] = (a - b) * kInvSqrt2;
        }
        return;
    }
    CnotMasks m = masks_of(g);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < dim; i++) {
        auto u = static_cast<std::uint64_t>(i);
        if ((u & m.control) && !(u & m.lowest_target)) {
            std::swap(v[u], v[u ^ m.flip]);
        }
    }
}

bool close(const Statevector &a, const Statevector &b, double tol) {
    for (std::size_t i = 0; i < a.size(); i++) {
        if (std::abs(a[i] - b[i]) > tol) {
            return false;
        }
    }
    return true;
}

void require_same_width(const Circuit &a, const Circuit &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw std::invalid_argument("equivalence needs equal qubit counts, got " + std::to_string(a.n_qubits()) +
                                    " and " + std::to_string(b.n_qubits()));
    }
    if (a.n_qubits() > kMaxSimQubits) {
        throw TooLargeError("equivalence check capped at " + std::to_string(kMaxSimQubits) + " qubits");
    }
}

}  // namespace

Statevector simulate(const Circuit &c, std::uint64_t input_basis_state) {
    Statevector v = basis_state(c, input_basis_state);
    for (const Gate &g : c.gates()) {
        apply_gate_serial(v, g);
    }
    return v;
}

Statevector simulate_parallel(const Circuit &c, std::uint64_t input_basis_state) {
    Statevector v = basis_state(c, input_basis_state);
    for (const Gate &g : c.gates()) {
        apply_gate_parallel(v, g);
    }
    return v;
}

bool equivalent(const Circuit &a, const Circuit &b, double tol) {
    require_same_width(a, b);
    std::uint64_t dim = std::uint64_t{1} << a.n_qubits();
    for (std::uint64_t k = 0; k < dim; k++) {
        if (!close(simulate(a, k), simulate(b, k), tol)) {
            return false;
        }
    }
    return true;
}

bool equivalent_parallel(const Circuit &a, const Circuit &b, double tol) {
    require_same_width(a, b);
    auto dim = static_cast<std::int64_t>(std::uint64_t{1} << a.n_qubits());
    bool same = true;
#pragma omp parallel for schedule(dynamic) reduction(&& : same)
    for (std::int64_t k = 0; k < dim; k++) {
        auto u = static_cast<std::uint64_t>(k);
        same = same && close(simulate(a, u), simulate(b, u), tol);
    }
    return same;
}

OracleResult oracle_min_depth(const Circuit &c, std::size_t node_cap) {
    OracleResult result;
    result.min_depth = depth(c);
    result.witness = c;
    if (node_cap == 0) {
        return result;
    }
    // Frontier entries point into `seen`, whose nodes never move.
    std::unordered_set<std::string> seen;
    std::deque<const std::string *> frontier;
    frontier.push_back(&*seen.insert(serialize_circuit(c)).first);

    bool capped = false;
    while (!frontier.empty() && !capped) {
        Circuit node = parse_circuit(*frontier.front());
        frontier.pop_front();
        for (const Match &m : find_matches(node)) {
            Circuit child = apply_match(node, m);
            auto [it, fresh] = seen.insert(serialize_circuit(child));
            if (!fresh) {
                continue;
            }
            if (seen.size() > node_cap) {
                seen.erase(it);
                capped = true;
                break;
            }
            std::size_t d = depth(child);
            if (d < result.min_depth) {
                result.min_depth = d;
                result.witness = child;
            }
            frontier.push_back(&*it);
        }
    }
    result.exhaustive = !capped;
    result.nodes_explored = seen.size();
    return result;
}

SummaryRow summarize(std::size_t qubits, RewardKind kind, std::uint64_t seed, const std::vector<EpochRecord> &records) {
    if (records.empty()) {
        throw std::invalid_argument("cannot summarize an empty run");
    }
    SummaryRow row;
    row.qubits = qubits;
    row.reward_kind = kind;
    row.seed = seed;
    row.epochs = records.size();
    row.min_rew = row.max_rew = records.front().cum_reward;
    row.min_depth = row.max_depth = records.front().final_depth;
    for (const EpochRecord &r : records) {
        row.min_rew = std::min(row.min_rew, r.cum_reward);
        row.max_rew = std::max(row.max_rew, r.cum_reward);
        row.min_depth = std::min(row.min_depth, r.final_depth);
        row.max_depth = std::max(row.max_depth, r.final_depth);
    }
    for (const EpochRecord &r : records) {
        row.freq_min_depth += r.final_depth == row.min_depth;
        row.freq_max_depth += r.final_depth == row.max_depth;
        row.freq_depth3 += r.final_depth == 3;
    }
    return row;
}

namespace {

template <typename T, typename Get>
T lower_median(const std::vector<SummaryRow> &rows, Get get) {
    std::vector<T> xs;
    xs.reserve(rows.size());
    for (const SummaryRow &r : rows) {
        xs.push_back(get(r));
    }
    std::sort(xs.begin(), xs.end());
    return xs[(xs.size() - 1) / 2];
}

}  // namespace

SummaryRow aggregate_median(const std::vector<SummaryRow> &rows) {
    if (rows.empty()) {
        throw std::invalid_argument("cannot aggregate zero rows");
    }
    SummaryRow agg;
    agg.qubits = rows.front().qubits;
    agg.reward_kind = rows.front().reward_kind;
    agg.epochs = rows.front().epochs;
    agg.min_rew = lower_median<double>(rows, [](const SummaryRow &r) { return r.min_rew; });
    agg.max_rew = lower_median<double>(rows, [](const SummaryRow &r) { return r.max_rew; });
    agg.min_depth = lower_median<std::size_t>(rows, [](const SummaryRow &r) { return r.min_depth; });
    agg.freq_min_depth = lower_median<std::size_t>(rows, [](const SummaryRow &r) { return r.freq_min_depth; });
    agg.max_depth = lower_median<std::size_t>(rows, [](const SummaryRow &r) { return r.max_depth; });
    agg.freq_max_depth = lower_median<std::size_t>(rows, [](const SummaryRow &r) { return r.freq_max_depth; });
    agg.freq_depth3 = lower_median<std::size_t>(rows, [](const SummaryRow &r) { return r.freq_depth3; });
    return agg;
}

Table1Result run_table1(const std::vector<std::size_t> &sizes, const std::vector<RewardKind> &kinds,
                        const AgentConfig &cfg_template, const std::vector<std::uint64_t> &seeds, int jobs) {
    std::vector<std::size_t> sorted_sizes = sizes;
    std::vector<RewardKind> sorted_kinds = kinds;
    std::vector<std::uint64_t> sorted_seeds = seeds;
    std::sort(sorted_sizes.begin(), sorted_sizes.end());
    std::sort(sorted_kinds.begin(), sorted_kinds.end());
    std::sort(sorted_seeds.begin(), sorted_seeds.end());

    Table1Result result;
    if (sorted_seeds.empty()) {
        return result;
    }
    for (std::size_t n : sorted_sizes) {
        for (RewardKind k : sorted_kinds) {
            for (std::uint64_t s : sorted_seeds) {
                result.runs.push_back({n, k, s, {}, {}});
            }
        }
    }

    auto count = static_cast<std::int64_t>(result.runs.size());
    std::vector<std::exception_ptr> errors(result.runs.size());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(jobs, 1))
    for (std::int64_t i = 0; i < count; i++) {
        Table1Run &run = result.runs[static_cast<std::size_t>(i)];
        try {
            AgentConfig cfg = cfg_template;
            cfg.seed = run.seed;
            cfg.reward_kind = run.kind;
            if (cfg.max_steps == 0) {
                cfg.max_steps = 10 * run.qubits;
            }
            run.records = train(generate_bv(run.qubits), cfg).records;
            if (!run.records.empty()) {
                run.summary = summarize(run.qubits, run.kind, run.seed, run.records);
            }
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    for (std::size_t i = 0; i < result.runs.size(); i += sorted_seeds.size()) {
        std::vector<SummaryRow> group;
        for (std::size_t j = i; j < i + sorted_seeds.size(); j++) {
            if (!result.runs[j].records.empty()) {
                group.push_back(result.runs[j].summary);
            }
        }
        if (!group.empty()) {
            result.aggregate.push_back(aggregate_median(group));
        }
    }
    return result;
}

}  // namespace qopt
