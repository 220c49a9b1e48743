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

#include "qopt/qlearn.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qopt {

namespace {

template <typename T>
std::int8_t sign_of_drop(T before, T after) {
    return before > after ? 1 : (before < after ? -1 : 0);
}

void require(bool ok, const char *what) {
    if (!ok) {
        throw std::invalid_argument(what);
    }
}

}  // namespace

std::size_t StateKey::index() const {
    return ((static_cast<std::size_t>(rule) * 3 + static_cast<std::size_t>(d_depth + 1)) * 3 +
            static_cast<std::size_t>(d_count + 1)) *
               3 +
           static_cast<std::size_t>(d_str + 1);
}

StateKey StateKey::from_index(std::size_t i) {
    StateKey s;
    s.d_str = static_cast<std::int8_t>(i % 3) - 1;
    i /= 3;
    s.d_count = static_cast<std::int8_t>(i % 3) - 1;
    i /= 3;
    s.d_depth = static_cast<std::int8_t>(i % 3) - 1;
    s.rule = static_cast<RuleId>(i / 3);
    return s;
}

StateKey encode_state(const Metrics &before, const Metrics &after, RuleId rule) {
    return {rule, sign_of_drop(before.depth, after.depth), sign_of_drop(before.gate_count, after.gate_count),
            sign_of_drop(before.interaction_strength, after.interaction_strength)};
}

StateKey encode_state(const Circuit &c, const Match &m) {
    return encode_state(metrics(c), tentative_metrics(c, m), m.rule);
}

void AgentConfig::validate() const {
    require(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0, 1]");
    require(gamma >= 0.0 && gamma < 1.0, "gamma must lie in [0, 1)");
    require(eps0 >= 0.0 && eps0 <= 1.0, "eps0 must lie in [0, 1]");
    require(eps_min >= 0.0 && eps_min <= eps0, "eps-min must lie in [0, eps0]");
    require(eps_decay_fraction > 0.0 && eps_decay_fraction <= 1.0, "eps-decay-frac must lie in (0, 1]");
    require(max_steps > 0, "max-steps must be positive");
    reward_params.validate();
}

AgentConfig default_config(std::size_t n_qubits) {
    AgentConfig cfg;
    cfg.max_steps = 10 * n_qubits;
    return cfg;
}

Action select_action(const QTable &q, const StateKey &s, double epsilon, Rng &rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (unit(rng) < epsilon) {
        return std::bernoulli_distribution(0.5)(rng) ? Action::APPLY : Action::REJECT;
    }
    const ActionValues &v = q[s];
    return v.apply > v.reject ? Action::APPLY : Action::REJECT;
}

void q_update(QTable &q, const StateKey &s, Action a, double r, const std::optional<StateKey> &next,
              const AgentConfig &cfg) {
    double max_next = next ? q[*next].max() : 0.0;
    double &value = q[s][a];
    value += cfg.alpha * (r + cfg.gamma * max_next - value);
}

double epsilon_at(std::size_t epoch, const AgentConfig &cfg) {
    double decay_epochs = cfg.eps_decay_fraction * static_cast<double>(cfg.epochs);
    auto e = static_cast<double>(epoch);
    if (e >= decay_epochs) {
        return cfg.eps_min;
    }
    return cfg.eps0 + (cfg.eps_min - cfg.eps0) * (e / decay_epochs);
}

namespace {

// A match offered to the agent, with the circuit it would produce.
struct Offer {
    StateKey state;
    Circuit after;
    Metrics after_metrics;
};

std::optional<Offer> draw_offer(const Circuit &c, const Metrics &m, const std::vector<Match> &matches, Rng &rng) {
    if (matches.empty()) {
        return std::nullopt;
    }
    std::uniform_int_distribution<std::size_t> pick(0, matches.size() - 1);
    const Match &chosen = matches[pick(rng)];
    Circuit after = apply_match(c, chosen);
    Metrics am = metrics(after);
    return Offer{encode_state(m, am, chosen.rule), std::move(after), am};
}

}  // namespace

EpochOutcome run_epoch(const Circuit &start, QTable &q, std::size_t epoch, const AgentConfig &cfg, Rng &rng) {
    if (start.empty()) {
        throw std::invalid_argument("run_epoch needs a non-empty start circuit");
    }
    double epsilon = epsilon_at(epoch, cfg);
    Circuit current = start;
    Metrics current_m = metrics(current);
    EpochRecord rec;
    rec.epoch = epoch;

    // Matches only change when a rewrite is applied.
    std::vector<Match> matches = find_matches(current);
    std::optional<Offer> offer = draw_offer(current, current_m, matches, rng);
    while (offer) {
        Action a = select_action(q, offer->state, epsilon, rng);
        const Metrics &next_m = a == Action::APPLY ? offer->after_metrics : current_m;
        double r = reward(cfg.reward_kind, current_m, next_m, a, cfg.reward_params);
        rec.cum_reward += r;
        rec.steps++;
        if (a == Action::APPLY) {
            rec.applied++;
            current = std::move(offer->after);
            current_m = next_m;
            matches = find_matches(current);
        }
        StateKey s = offer->state;
        offer.reset();
        if (rec.steps < cfg.max_steps) {
            offer = draw_offer(current, current_m, matches, rng);
        }
        q_update(q, s, a, r, offer ? std::optional<StateKey>(offer->state) : std::nullopt, cfg);
    }

    rec.final_depth = current_m.depth;
    rec.final_count = current_m.gate_count;
    rec.final_str = current_m.interaction_strength;
    return {rec, std::move(current)};
}

TrainResult train(const Circuit &start, const AgentConfig &cfg, const EpochObserver &observer) {
    cfg.validate();
    TrainResult result;
    result.records.reserve(cfg.epochs);
    Rng rng(cfg.seed);
    for (std::size_t e = 0; e < cfg.epochs; e++) {
        EpochOutcome out = run_epoch(start, result.q, e, cfg, rng);
        if (observer) {
            observer(out);
        }
        result.records.push_back(out.record);
    }
    return result;
}

}  // namespace qopt
