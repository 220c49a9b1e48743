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

#include <cstdint>
#include <stdexcept>
#include <string_view>

#include "qopt/circuit.h"

namespace qopt {

enum class Action : std::uint8_t { REJECT = 0, APPLY = 1 };

enum class RewardKind : std::uint8_t { RATIO, RPOW, FOSEL };

std::string_view reward_name(RewardKind k);
/// Accepts "ratio", "rpow", "fosel". Throws std::invalid_argument otherwise.
RewardKind parse_reward_kind(std::string_view name);

/// Raised when a depth ratio would divide by an empty circuit's depth.
struct EmptyCircuitError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Fixed charge added by r_pow for the APPLY action; must lie in (0, 0.2].
struct RewardParams {
    double cost_c = 0.1;

    void validate() const;
};

// Each reward has a Circuit overload and a Metrics overload; the training
// loop uses the latter so it never recomputes metrics.

/// depth(before) / depth(after).
double ratio(const Circuit &before, const Circuit &after);
double ratio(const Metrics &before, const Metrics &after);

/// depth - 0.2 * gate_count.
double fosel_cost(const Circuit &c);
double fosel_cost(const Metrics &m);

/// fosel_cost(before) - fosel_cost(after).
double fosel_reward(const Circuit &before, const Circuit &after);
double fosel_reward(const Metrics &before, const Metrics &after);

/// sign(x) * |x|^p, with signed_pow(0, p) = 0.
double signed_pow(double x, double p);

/// cost + signed_pow(str(before) - str(after), ratio(before, after)).
///
/// When the interaction strength is unchanged the power term is zero for
/// every positive exponent, so an empty after-circuit is only an error when
/// the strength actually changed.
double r_pow(const Circuit &before, const Circuit &after, Action action, const RewardParams &params);
double r_pow(const Metrics &before, const Metrics &after, Action action, const RewardParams &params);

/// Dispatch on kind. RATIO ignores the action.
double reward(RewardKind kind, const Circuit &before, const Circuit &after, Action action,
              const RewardParams &params);
double reward(RewardKind kind, const Metrics &before, const Metrics &after, Action action,
              const RewardParams &params);

}  // namespace qopt
