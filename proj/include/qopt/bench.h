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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qopt/circuit.h"
#include "qopt/qlearn.h"

namespace qopt {

/// Bernstein-Vazirani with the all-ones hidden string over H and CNOT only:
/// H on every wire, CNOT(i -> n-1) for i < n-1, H on every wire.
/// Throws std::invalid_argument for n < 2.
Circuit generate_bv(std::size_t n);

// ---------------------------------------------------------------------------
// Dense statevector simulation, used as the unitary-equivalence oracle.
//
// Each kernel has a serial reference and an OpenMP version; the serial one is
// what the tests treat as ground truth.

using Amplitude = std::complex<double>;
using Statevector = std::vector<Amplitude>;

inline constexpr std::size_t kMaxSimQubits = 12;
inline constexpr double kEquivalenceTolerance = 1e-9;

struct TooLargeError : std::length_error {
    using std::length_error::length_error;
};

/// Wire w is bit w of the basis index.
Statevector simulate(const Circuit &c, std::uint64_t input_basis_state);
Statevector simulate_parallel(const Circuit &c, std::uint64_t input_basis_state);

/// Full-unitary comparison: every basis input, every amplitude within tol.
bool equivalent(const Circuit &a, const Circuit &b, double tol = kEquivalenceTolerance);
bool equivalent_parallel(const Circuit &a, const Circuit &b, double tol = kEquivalenceTolerance);

// ---------------------------------------------------------------------------

struct OracleResult {
    std::size_t min_depth = 0;
    bool exhaustive = false;
    std::size_t nodes_explored = 0;
    /// A circuit of depth min_depth reached from the root.
    std::optional<Circuit> witness;
};

/// Breadth-first search over circuits reachable by rewrites, deduplicated by
/// serialized text. At most node_cap distinct circuits are admitted;
/// exhaustive is true only if the frontier ran dry first.
OracleResult oracle_min_depth(const Circuit &c, std::size_t node_cap);

// ---------------------------------------------------------------------------

struct SummaryRow {
    std::size_t qubits = 0;
    RewardKind reward_kind = RewardKind::RPOW;
    /// Empty for the median-over-seeds row.
    std::optional<std::uint64_t> seed;
    std::size_t epochs = 0;
    double min_rew = 0.0;
    double max_rew = 0.0;
    std::size_t min_depth = 0;
    std::size_t freq_min_depth = 0;
    std::size_t max_depth = 0;
    std::size_t freq_max_depth = 0;
    /// Epochs ending at depth 3, the known BV optimum; not a Table-style
    /// column but what the comparison between rewards hinges on.
    std::size_t freq_depth3 = 0;
};

/// Reduce one run's records. Throws std::invalid_argument when empty.
SummaryRow summarize(std::size_t qubits, RewardKind kind, std::uint64_t seed, const std::vector<EpochRecord> &records);

/// Element-wise median (lower median for even counts) of per-seed rows.
SummaryRow aggregate_median(const std::vector<SummaryRow> &rows);

struct Table1Run {
    std::size_t qubits;
    RewardKind kind;
    std::uint64_t seed;
    std::vector<EpochRecord> records;
    SummaryRow summary;
};

struct Table1Result {
    /// Sorted by (qubits, kind, seed).
    std::vector<Table1Run> runs;
    /// One median row per (qubits, kind), same order.
    std::vector<SummaryRow> aggregate;
};

/// Train on generate_bv(size) for every (size, kind, seed). max_steps in the
/// template is ignored when zero and replaced by 10 * size. Runs are
/// independent and fan out over `jobs` OpenMP threads.
Table1Result run_table1(const std::vector<std::size_t> &sizes, const std::vector<RewardKind> &kinds,
                        const AgentConfig &cfg_template, const std::vector<std::uint64_t> &seeds, int jobs = 1);

}  // namespace qopt
