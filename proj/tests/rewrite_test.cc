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

#include "qopt/rewrite.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <tuple>

#include "qopt/bench.h"
#include "test_util.h"

using namespace qopt;

namespace {

Circuit c_of(const char *text) { return parse_circuit(text); }

std::vector<std::tuple<RuleId, std::vector<std::size_t>>> shape_of(const std::vector<Match> &ms) {
    std::vector<std::tuple<RuleId, std::vector<std::size_t>>> out;
    for (const Match &m : ms) {
        out.emplace_back(m.rule, m.positions);
    }
    return out;
}

// Direct transcription of the adjacency predicates, checking every pair.
std::vector<std::tuple<RuleId, std::vector<std::size_t>>> brute_force_matches(const Circuit &c) {
    auto untouched_between = [&](std::size_t i, std::size_t j) {
        std::set<QubitId> wires;
        for (QubitId w : c[i].wires()) wires.insert(w);
        for (QubitId w : c[j].wires()) wires.insert(w);
        for (std::size_t k = i + 1; k < j; k++) {
            for (QubitId w : wires) {
                if (c[k].touches(w)) return false;
            }
        }
        return true;
    };
    auto targets = [](const Gate &g) { return std::set<QubitId>(g.targets().begin(), g.targets().end()); };
    std::vector<std::tuple<RuleId, std::vector<std::size_t>>> out;
    for (RuleId rule : kAllRules) {
        for (std::size_t i = 0; i < c.size(); i++) {
            if (rule == RuleId::CNOT_REVERSE) {
                if (c[i].is_cnot() && c[i].targets().size() == 1) out.emplace_back(rule, std::vector<std::size_t>{i});
                continue;
            }
            for (std::size_t j = i + 1; j < c.size(); j++) {
                const Gate &a = c[i];
                const Gate &b = c[j];
                bool pattern = false;
                if (rule == RuleId::HH_CANCEL) {
                    pattern = a.is_h() && b.is_h() && a.wire() == b.wire();
                } else if (a.is_cnot() && b.is_cnot() && a.control() == b.control()) {
                    auto ta = targets(a);
                    auto tb = targets(b);
                    std::vector<QubitId> common;
                    std::set_intersection(ta.begin(), ta.end(), tb.begin(), tb.end(), std::back_inserter(common));
                    pattern = rule == RuleId::CNOT_CANCEL ? ta == tb : common.empty();
                }
                if (pattern && untouched_between(i, j)) out.emplace_back(rule, std::vector<std::size_t>{i, j});
            }
        }
    }
    return out;
}

}  // namespace

TEST(find_matches, examples) {
    auto hh = find_matches(c_of("qubits 1\nh 0\nh 0\n"));
    ASSERT_EQ(hh.size(), 1u);
    ASSERT_EQ(hh[0], (Match{RuleId::HH_CANCEL, {0, 1}, {0}}));

    auto bv = find_matches(generate_bv(3));
    ASSERT_EQ(bv.size(), 2u);
    ASSERT_EQ(bv[0], (Match{RuleId::CNOT_REVERSE, {3}, {0, 2}}));
    ASSERT_EQ(bv[1], (Match{RuleId::CNOT_REVERSE, {4}, {1, 2}}));

    ASSERT_TRUE(find_matches(Circuit(3)).empty());
}

TEST(find_matches, minimal_patterns) {
    auto cancel = find_matches(c_of("qubits 2\ncx 0 1\ncx 0 1\n"));
    ASSERT_EQ(shape_of(cancel), (decltype(shape_of(cancel)){{RuleId::CNOT_CANCEL, {0, 1}},
                                                            {RuleId::CNOT_REVERSE, {0}},
                                                            {RuleId::CNOT_REVERSE, {1}}}));
    auto merge = find_matches(c_of("qubits 3\ncx 0 1\ncx 0 2\n"));
    ASSERT_EQ(merge[0], (Match{RuleId::CNOT_MERGE, {0, 1}, {0, 1, 2}}));
    auto reverse = find_matches(c_of("qubits 2\ncx 0 1\n"));
    ASSERT_EQ(shape_of(reverse), (decltype(shape_of(reverse)){{RuleId::CNOT_REVERSE, {0}}}));
}

TEST(find_matches, adjacency_blocks_matches) {
    // h 0 between the H pair on wire 0 breaks it; h 1 does not.
    ASSERT_EQ(find_matches(c_of("qubits 2\nh 0\ncx 1 0\nh 0\n")).size(), 1u);
    ASSERT_EQ(shape_of(find_matches(c_of("qubits 2\nh 0\nh 1\nh 0\n"))),
              (std::vector<std::tuple<RuleId, std::vector<std::size_t>>>{{RuleId::HH_CANCEL, {0, 2}}}));
    // A gate on a target of only the first CNOT blocks a merge.
    auto blocked = find_matches(c_of("qubits 3\ncx 0 1\nh 1\ncx 0 2\n"));
    for (const Match &m : blocked) ASSERT_NE(m.rule, RuleId::CNOT_MERGE);
    // Overlapping but unequal targets neither cancel nor merge.
    auto overlap = find_matches(c_of("qubits 3\ncx 0 1 2\ncx 0 1\n"));
    ASSERT_EQ(shape_of(overlap), (decltype(shape_of(overlap)){{RuleId::CNOT_REVERSE, {1}}}));
}

TEST(find_matches, agrees_with_brute_force) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 500; trial++) {
        Circuit c = trial % 2 ? test_support::random_circuit(rng, 2 + trial % 4, 20)
                              : test_support::random_redundant_circuit(rng, 2 + trial % 4, 20);
        auto found = find_matches(c);
        ASSERT_EQ(shape_of(found), brute_force_matches(c)) << serialize_circuit(c);
        for (const Match &m : found) ASSERT_TRUE(is_valid_match(c, m));
        ASSERT_EQ(found, find_matches(c));
    }
}

TEST(apply_match, examples) {
    Circuit hh = c_of("qubits 1\nh 0\nh 0\n");
    ASSERT_EQ(apply_match(hh, find_matches(hh)[0]), Circuit(1));

    Circuit two = c_of("qubits 3\ncx 0 1\ncx 0 2\n");
    Circuit merged = apply_match(two, find_matches(two)[0]);
    ASSERT_EQ(merged, c_of("qubits 3\ncx 0 1 2\n"));
    ASSERT_EQ(depth(two), 2u);
    ASSERT_EQ(depth(merged), 1u);

    Circuit one = c_of("qubits 2\ncx 0 1\n");
    Circuit reversed = apply_match(one, find_matches(one)[0]);
    ASSERT_EQ(reversed, c_of("qubits 2\nh 0\nh 1\ncx 1 0\nh 0\nh 1\n"));
    ASSERT_EQ(depth(reversed), 3u);
    ASSERT_EQ(one, c_of("qubits 2\ncx 0 1\n"));
}

TEST(apply_match, merge_keeps_earlier_position) {
    Circuit c = c_of("qubits 4\ncx 0 1\nh 3\ncx 0 2\n");
    auto ms = find_matches(c);
    ASSERT_EQ(ms[0].rule, RuleId::CNOT_MERGE);
    ASSERT_EQ(apply_match(c, ms[0]), c_of("qubits 4\ncx 0 1 2\nh 3\n"));
}

TEST(apply_match, rejects_stale_matches) {
    Circuit c = c_of("qubits 2\nh 0\nh 0\ncx 0 1\n");
    Match hh = find_matches(c)[0];
    Circuit after = apply_match(c, hh);
    ASSERT_THROW(apply_match(after, hh), MatchError);
    ASSERT_THROW(apply_match(c, Match{RuleId::HH_CANCEL, {1, 0}, {0}}), MatchError);
    ASSERT_THROW(apply_match(c, Match{RuleId::HH_CANCEL, {0, 1}, {1}}), MatchError);
    ASSERT_THROW(apply_match(c, Match{RuleId::CNOT_REVERSE, {0}, {0, 1}}), MatchError);
    ASSERT_THROW(apply_match(c, Match{RuleId::CNOT_REVERSE, {7}, {0, 1}}), MatchError);
}

TEST(tentative_metrics, examples) {
    Circuit hh = c_of("qubits 1\nh 0\nh 0\n");
    ASSERT_EQ(tentative_metrics(hh, find_matches(hh)[0]), (Metrics{0, 0, 0.0}));

    Circuit bv = generate_bv(3);
    ASSERT_EQ(tentative_metrics(bv, find_matches(bv)[0]).depth, 6u);

    Circuit cc = c_of("qubits 2\ncx 0 1\ncx 0 1\nh 0\n");
    ASSERT_EQ(tentative_metrics(cc, find_matches(cc)[0]), (Metrics{1, 1, 0.0}));
    ASSERT_EQ(cc, c_of("qubits 2\ncx 0 1\ncx 0 1\nh 0\n"));
}

// Gates outside the match survive in order, and the interaction strength
// never rises.
TEST(apply_match, frame_rule_and_str_conservation) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 300; trial++) {
        Circuit c = test_support::random_redundant_circuit(rng, 2 + trial % 4, 20);
        for (const Match &m : find_matches(c)) {
            Circuit out = apply_match(c, m);
            std::vector<Gate> rest;
            for (std::size_t k = 0; k < c.size(); k++) {
                if (std::find(m.positions.begin(), m.positions.end(), k) == m.positions.end()) rest.push_back(c[k]);
            }
            std::size_t cursor = 0;
            for (const Gate &g : out.gates()) {
                if (cursor < rest.size() && g == rest[cursor]) cursor++;
            }
            ASSERT_EQ(cursor, rest.size());

            if (m.rule == RuleId::CNOT_CANCEL) {
                ASSERT_LE(interaction_strength(out), interaction_strength(c));
                std::size_t pairs = c.n_qubits() * (c.n_qubits() - 1) / 2;
                double drop = static_cast<double>(2 * c[m.positions[0]].targets().size()) / static_cast<double>(pairs);
                ASSERT_NEAR(interaction_strength(c) - interaction_strength(out), drop, 1e-12);
            } else {
                ASSERT_EQ(interaction_strength(out), interaction_strength(c));
                for (QubitId a = 0; a < c.n_qubits(); a++) {
                    for (QubitId b = a + 1; b < c.n_qubits(); b++) {
                        ASSERT_EQ(pair_strength(out, a, b), pair_strength(c, a, b));
                    }
                }
            }
        }
    }
}

TEST(apply_match, soundness_on_small_random_circuits) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 60; trial++) {
        Circuit c = trial % 2 ? test_support::random_circuit(rng, 1 + trial % 4, 12)
                              : test_support::random_redundant_circuit(rng, 2 + trial % 3, 12);
        for (const Match &m : find_matches(c)) {
            ASSERT_TRUE(equivalent(c, apply_match(c, m))) << rule_name(m.rule) << "\n" << serialize_circuit(c);
        }
    }
}
