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

#include "qopt/rewards.h"

#include <cmath>
#include <string>

namespace qopt {

std::string_view reward_name(RewardKind k) {
    switch (k) {
        case RewardKind::RATIO:
            return "ratio";
        case RewardKind::RPOW:
            return "rpow";
        case RewardKind::FOSEL:
            return "fosel";
    }
    return "?";
}

RewardKind parse_reward_kind(std::string_view name) {
    if (name == "ratio") {
        return RewardKind::RATIO;
    }
    if (name == "rpow") {
        return RewardKind::RPOW;
    }
    if (name == "fosel") {
        return RewardKind::FOSEL;
    }
    throw std::invalid_argument("unknown reward '" + std::string(name) + "' (expected ratio, rpow or fosel)");
}

void RewardParams::validate() const {
    if (!(cost_c > 0.0 && cost_c <= 0.2)) {
        throw std::invalid_argument("cost-c must lie in (0, 0.2], got " + std::to_string(cost_c));
    }
}

double ratio(const Metrics &before, const Metrics &after) {
    if (after.depth == 0) {
        throw EmptyCircuitError("depth ratio undefined: after-circuit has depth 0");
    }
    return static_cast<double>(before.depth) / static_cast<double>(after.depth);
}

double ratio(const Circuit &before, const Circuit &after) { return ratio(metrics(before), metrics(after)); }

double fosel_cost(const Metrics &m) { return static_cast<double>(m.depth) - 0.2 * static_cast<double>(m.gate_count); }

double fosel_cost(const Circuit &c) { return fosel_cost(metrics(c)); }

double fosel_reward(const Metrics &before, const Metrics &after) { return fosel_cost(before) - fosel_cost(after); }

double fosel_reward(const Circuit &before, const Circuit &after) {
    return fosel_reward(metrics(before), metrics(after));
}

double signed_pow(double x, double p) {
    if (x == 0.0) {
        return 0.0;
    }
    return std::copysign(std::pow(std::fabs(x), p), x);
}

double r_pow(const Metrics &before, const Metrics &after, Action action, const RewardParams &params) {
    double cost = action == Action::APPLY ? params.cost_c : 0.0;
    double delta = before.interaction_strength - after.interaction_strength;
    if (delta == 0.0) {
        return cost;
    }
    return cost + signed_pow(delta, ratio(before, after));
}

double r_pow(const Circuit &before, const Circuit &after, Action action, const RewardParams &params) {
    return r_pow(metrics(before), metrics(after), action, params);
}

double reward(RewardKind kind, const Metrics &before, const Metrics &after, Action action,
              const RewardParams &params) {
    switch (kind) {
        case RewardKind::RATIO:
            return ratio(before, after);
        case RewardKind::RPOW:
            return r_pow(before, after, action, params);
        case RewardKind::FOSEL:
            return fosel_reward(before, after);
    }
    return 0.0;
}

double reward(RewardKind kind, const Circuit &before, const Circuit &after, Action action,
              const RewardParams &params) {
    return reward(kind, metrics(before), metrics(after), action, params);
}

}  // namespace qopt
