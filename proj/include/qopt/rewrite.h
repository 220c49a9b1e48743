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
#include <stdexcept>
#include <string_view>
#include <vector>

#include "qopt/circuit.h"

namespace qopt {

/// The four template identities, in matching order.
enum class RuleId : std::uint8_t {
    HH_CANCEL,     // H H = I on one wire
    CNOT_CANCEL,   // two identical CNOTs annihilate
    CNOT_MERGE,    // CNOTs sharing a control fuse into one multi-target CNOT
    CNOT_REVERSE,  // CX(c,t) = (H c)(H t) CX(t,c) (H c)(H t)
};

inline constexpr std::size_t kRuleCount = 4;
inline constexpr std::array<RuleId, kRuleCount> kAllRules = {RuleId::HH_CANCEL, RuleId::CNOT_CANCEL,
                                                             RuleId::CNOT_MERGE, RuleId::CNOT_REVERSE};

std::string_view rule_name(RuleId r);

struct MatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An applicable rewrite: the rule, the gate indices it consumes (strictly
/// increasing) and the sorted wires those gates act on.
struct Match {
    RuleId rule;
    std::vector<std::size_t> positions;
    std::vector<QubitId> anchor_wires;

    bool operator==(const Match &) const = default;
};

/// Every match of every rule, ordered by rule then by first gate index.
///
/// Adjacency contract: the gates of a two-gate match must have no gate
/// between them that touches any wire either of them acts on.
std::vector<Match> find_matches(const Circuit &c);

/// True iff m is exactly a match find_matches(c) would report.
bool is_valid_match(const Circuit &c, const Match &m);

/// Returns the rewritten circuit; c is untouched. Throws MatchError for a
/// stale or malformed match.
Circuit apply_match(const Circuit &c, const Match &m);

/// Metrics of apply_match(c, m).
Metrics tentative_metrics(const Circuit &c, const Match &m);

}  // namespace qopt
