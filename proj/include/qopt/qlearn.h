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

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "qopt/circuit.h"
#include "qopt/rewards.h"
#include "qopt/rewrite.h"

namespace qopt {

using Rng = std::mt19937_64;

/// Compact state seen by the agent: which rule is offered and the sign of
/// the change each metric would undergo (before - after) if it is applied.
/// Positive means the metric would drop.
struct StateKey {
    RuleId rule = RuleId::HH_CANCEL;
    std::int8_t d_depth = 0;
    std::int8_t d_count = 0;
    std::int8_t d_str = 0;

    /// Dense index in [0, kCount).
    std::size_t index() const;
    static StateKey from_index(std::size_t i);

    static constexpr std::size_t kCount = kRuleCount * 3 * 3 * 3;

    bool operator==(const StateKey &) const = default;
};

StateKey encode_state(const Metrics &before, const Metrics &after, RuleId rule);
StateKey encode_state(const Circuit &c, const Match &m);

struct ActionValues {
    double reject = 0.0;
    double apply = 0.0;

    double operator[](Action a) const { return a == Action::APPLY ? apply : reject; }
    double &operator[](Action a) { return a == Action::APPLY ? apply : reject; }
    double max() const { return reject > apply ? reject : apply; }

    bool operator==(const ActionValues &) const = default;
};

/// Action values for every StateKey; unseen keys read as zero.
class QTable {
   public:
    const ActionValues &operator[](const StateKey &s) const { return values_[s.index()]; }
    ActionValues &operator[](const StateKey &s) { return values_[s.index()]; }

    bool operator==(const QTable &) const = default;

   private:
    std::array<ActionValues, StateKey::kCount> values_{};
};

struct AgentConfig {
    double alpha = 0.1;
    double gamma = 0.9;
    double eps0 = 1.0;
    double eps_min = 0.05;
    double eps_decay_fraction = 0.5;
    std::size_t epochs = 8000;
    std::size_t max_steps = 30;
    std::uint64_t seed = 1;
    RewardKind reward_kind = RewardKind::RPOW;
    RewardParams reward_params;

    /// Throws std::invalid_argument naming the first field out of range.
    void validate() const;
};

/// Defaults with max_steps = 10 * n_qubits.
AgentConfig default_config(std::size_t n_qubits);

struct EpochRecord {
    std::size_t epoch = 0;
    std::size_t steps = 0;
    std::size_t applied = 0;
    double cum_reward = 0.0;
    std::size_t final_depth = 0;
    std::size_t final_count = 0;
    double final_str = 0.0;

    bool operator==(const EpochRecord &) const = default;
};

/// Epsilon-greedy; greedy ties go to REJECT.
Action select_action(const QTable &q, const StateKey &s, double epsilon, Rng &rng);

/// One tabular Q-learning backup. A missing next state means terminal.
void q_update(QTable &q, const StateKey &s, Action a, double r, const std::optional<StateKey> &next,
              const AgentConfig &cfg);

/// Linear decay from eps0 to eps_min over the first
/// eps_decay_fraction * epochs epochs, then flat.
double epsilon_at(std::size_t epoch, const AgentConfig &cfg);

struct EpochOutcome {
    EpochRecord record;
    Circuit final_circuit;
};

/// One episode from start. Each step offers a single uniformly chosen match,
/// which the agent accepts or rejects.
EpochOutcome run_epoch(const Circuit &start, QTable &q, std::size_t epoch, const AgentConfig &cfg, Rng &rng);

struct TrainResult {
    QTable q;
    std::vector<EpochRecord> records;
};

using EpochObserver = std::function<void(const EpochOutcome &)>;

/// cfg.epochs episodes sharing one table and one rng stream seeded from
/// cfg.seed. Every episode restarts from start.
TrainResult train(const Circuit &start, const AgentConfig &cfg, const EpochObserver &observer = {});

}  // namespace qopt
