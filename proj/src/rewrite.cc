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

#include <algorithm>
#include <limits>

namespace qopt {

std::string_view rule_name(RuleId r) {
    switch (r) {
        case RuleId::HH_CANCEL:
            return "HH_CANCEL";
        case RuleId::CNOT_CANCEL:
            return "CNOT_CANCEL";
        case RuleId::CNOT_MERGE:
            return "CNOT_MERGE";
        case RuleId::CNOT_REVERSE:
            return "CNOT_REVERSE";
    }
    return "?";
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// For every gate and each of its wires (control first, then targets): the
// index of the previous and next gate touching that wire.
class WireLinks {
   public:
    explicit WireLinks(const Circuit &c) : offset_(c.size() + 1, 0) {
        for (std::size_t i = 0; i < c.size(); i++) {
            offset_[i + 1] = offset_[i] + 1 + c[i].targets().size();
        }
        prev_.assign(offset_.back(), kNone);
        next_.assign(offset_.back(), kNone);
        std::vector<std::size_t> last_gate(c.n_qubits(), kNone);
        std::vector<std::size_t> last_slot(c.n_qubits(), kNone);
        auto link = [&](std::size_t gate, std::size_t flat, QubitId w) {
            if (last_gate[w] != kNone) {
                prev_[flat] = last_gate[w];
                next_[last_slot[w]] = gate;
            }
            last_gate[w] = gate;
            last_slot[w] = flat;
        };
        for (std::size_t i = 0; i < c.size(); i++) {
            std::size_t k = offset_[i];
            link(i, k++, c[i].wire());
            for (QubitId t : c[i].targets()) {
                link(i, k++, t);
            }
        }
    }

    // slot 0 is the control/H wire; slot 1 + k is target k.
    std::size_t next(std::size_t gate, std::size_t slot) const { return next_[offset_[gate] + slot]; }
    std::size_t prev(std::size_t gate, std::size_t slot) const { return prev_[offset_[gate] + slot]; }

   private:
    std::vector<std::size_t> offset_;
    std::vector<std::size_t> prev_;
    std::vector<std::size_t> next_;
};

bool disjoint_sorted(std::span<const QubitId> a, std::span<const QubitId> b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j) {
            return false;
        }
        if (*i < *j) {
            ++i;
        } else {
            ++j;
        }
    }
    return true;
}

bool same_targets(const Gate &a, const Gate &b) { return std::ranges::equal(a.targets(), b.targets()); }

std::vector<QubitId> union_wires(const Gate &a, const Gate &b) {
    std::vector<QubitId> w = a.wires();
    auto bw = b.wires();
    w.insert(w.end(), bw.begin(), bw.end());
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    return w;
}

std::vector<QubitId> sorted_wires(const Gate &g) {
    auto w = g.wires();
    std::sort(w.begin(), w.end());
    return w;
}

// Pattern on the two gates themselves, ignoring what lies between them.
bool pair_pattern(RuleId rule, const Gate &a, const Gate &b) {
    switch (rule) {
        case RuleId::HH_CANCEL:
            return a.is_h() && b.is_h() && a.wire() == b.wire();
        case RuleId::CNOT_CANCEL:
            return a.is_cnot() && b.is_cnot() && a.control() == b.control() && same_targets(a, b);
        case RuleId::CNOT_MERGE:
            return a.is_cnot() && b.is_cnot() && a.control() == b.control() &&
                   disjoint_sorted(a.targets(), b.targets());
        case RuleId::CNOT_REVERSE:
            return false;
    }
    return false;
}

}  // namespace

std::vector<Match> find_matches(const Circuit &c) {
    std::vector<Match> out;
    if (c.empty()) {
        return out;
    }
    WireLinks links(c);

    for (std::size_t i = 0; i < c.size(); i++) {
        const Gate &g = c[i];
        std::size_t j = links.next(i, 0);
        if (g.is_h() && j != kNone && c[j].is_h()) {
            out.push_back({RuleId::HH_CANCEL, {i, j}, {g.wire()}});
        }
    }

    for (std::size_t i = 0; i < c.size(); i++) {
        const Gate &g = c[i];
        std::size_t j = links.next(i, 0);
        if (!g.is_cnot() || j == kNone || !pair_pattern(RuleId::CNOT_CANCEL, g, c[j])) {
            continue;
        }
        bool adjacent = true;
        for (std::size_t k = 0; k < g.targets().size(); k++) {
            adjacent = adjacent && links.next(i, 1 + k) == j;
        }
        if (adjacent) {
            out.push_back({RuleId::CNOT_CANCEL, {i, j}, sorted_wires(g)});
        }
    }

    for (std::size_t i = 0; i < c.size(); i++) {
        const Gate &g = c[i];
        std::size_t j = links.next(i, 0);
        if (!g.is_cnot() || j == kNone || !pair_pattern(RuleId::CNOT_MERGE, g, c[j])) {
            continue;
        }
        bool adjacent = true;
        for (std::size_t k = 0; k < g.targets().size(); k++) {
            std::size_t nx = links.next(i, 1 + k);
            adjacent = adjacent && (nx == kNone || nx > j);
        }
        for (std::size_t k = 0; k < c[j].targets().size(); k++) {
            std::size_t pv = links.prev(j, 1 + k);
            adjacent = adjacent && (pv == kNone || pv < i);
        }
        if (adjacent) {
            out.push_back({RuleId::CNOT_MERGE, {i, j}, union_wires(g, c[j])});
        }
    }

    for (std::size_t i = 0; i < c.size(); i++) {
        const Gate &g = c[i];
        if (g.is_cnot() && g.targets().size() == 1) {
            out.push_back({RuleId::CNOT_REVERSE, {i}, sorted_wires(g)});
        }
    }
    return out;
}

bool is_valid_match(const Circuit &c, const Match &m) {
    if (m.rule == RuleId::CNOT_REVERSE) {
        if (m.positions.size() != 1 || m.positions[0] >= c.size()) {
            return false;
        }
        const Gate &g = c[m.positions[0]];
        return g.is_cnot() && g.targets().size() == 1 && m.anchor_wires == sorted_wires(g);
    }
    if (m.positions.size() != 2) {
        return false;
    }
    std::size_t i = m.positions[0];
    std::size_t j = m.positions[1];
    if (i >= j || j >= c.size() || !pair_pattern(m.rule, c[i], c[j])) {
        return false;
    }
    auto wires = union_wires(c[i], c[j]);
    if (m.anchor_wires != wires) {
        return false;
    }
    for (std::size_t k = i + 1; k < j; k++) {
        for (QubitId w : wires) {
            if (c[k].touches(w)) {
                return false;
            }
        }
    }
    return true;
}

Circuit apply_match(const Circuit &c, const Match &m) {
    if (!is_valid_match(c, m)) {
        throw MatchError(std::string("stale or invalid ") + std::string(rule_name(m.rule)) + " match");
    }
    const auto &src = c.gates();
    std::vector<Gate> out;
    out.reserve(src.size() + 4);
    std::size_t i = m.positions[0];
    switch (m.rule) {
        case RuleId::HH_CANCEL:
        case RuleId::CNOT_CANCEL:
            for (std::size_t k = 0; k < src.size(); k++) {
                if (k != i && k != m.positions[1]) {
                    out.push_back(src[k]);
                }
            }
            break;
        case RuleId::CNOT_MERGE: {
            std::size_t j = m.positions[1];
            std::vector<QubitId> targets(src[i].targets().begin(), src[i].targets().end());
            targets.insert(targets.end(), src[j].targets().begin(), src[j].targets().end());
            for (std::size_t k = 0; k < src.size(); k++) {
                if (k == i) {
                    out.push_back(Gate::cnot(src[i].control(), targets));
                } else if (k != j) {
                    out.push_back(src[k]);
                }
            }
            break;
        }
        case RuleId::CNOT_REVERSE: {
            QubitId ctl = src[i].control();
            QubitId tgt = src[i].targets()[0];
            out.insert(out.end(), src.begin(), src.begin() + static_cast<std::ptrdiff_t>(i));
            out.push_back(Gate::h(ctl));
            out.push_back(Gate::h(tgt));
            out.push_back(Gate::cnot(tgt, ctl));
            out.push_back(Gate::h(ctl));
            out.push_back(Gate::h(tgt));
            out.insert(out.end(), src.begin() + static_cast<std::ptrdiff_t>(i) + 1, src.end());
            break;
        }
    }
    return Circuit(c.n_qubits(), std::move(out));
}

Metrics tentative_metrics(const Circuit &c, const Match &m) { return metrics(apply_match(c, m)); }

}  // namespace qopt
