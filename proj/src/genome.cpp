// Copyright 2026 The QUSL Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "qusl/genome.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "qusl/error.hpp"

namespace qusl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) {
        t += kTwoPi;
    }
    // fmod of a tiny negative value can round up to exactly 2pi
    return t >= kTwoPi ? 0.0 : t;
}

bool chance(double p, Rng &rng) {
    if (p <= 0.0) {
        return false;
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return unit(rng) < p;
}

std::size_t pick_index(std::size_t n, Rng &rng) {
    std::uniform_int_distribution<std::size_t> d(0, n - 1);
    return d(rng);
}

void assign_qubits(Gate &g, std::size_t qubits, Rng &rng) {
    g.target = pick_index(qubits, rng);
    g.control = 0;
    if (g.kind == GateKind::CNOT) {
        std::size_t c = pick_index(qubits - 1, rng);
        if (c >= g.target) {
            ++c;
        }
        g.control = c;
    }
}

void require_same_qubits(const CircuitGenome &a, const CircuitGenome &b) {
    if (a.qubits != b.qubits) {
        throw DimensionError("genomes act on different qubit counts");
    }
}

using Token = std::tuple<GateKind, std::size_t, std::size_t, int>;

Token token(const Gate &g) {
    return {g.kind, g.target, g.kind == GateKind::CNOT ? g.control : 0,
            is_rotation(g.kind) ? angle_bucket(g.theta) : -1};
}

} // namespace

void validate(const VariationConfig &cfg) {
    for (double p : {cfg.p_add, cfg.p_remove, cfg.p_kind_change, cfg.p_rewire, cfg.p_angle_jitter}) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw ArgumentError("variation probabilities must lie in [0,1]");
        }
    }
    if (!(cfg.angle_jitter_sigma >= 0.0)) {
        throw ArgumentError("angle_jitter_sigma must be >= 0");
    }
    if (cfg.min_init_gates > cfg.max_init_gates || cfg.max_init_gates > cfg.max_gates) {
        throw ArgumentError("need min_init_gates <= max_init_gates <= max_gates");
    }
}

Gate random_gate(std::size_t qubits, Rng &rng) {
    if (qubits < 2) {
        throw ArgumentError("random gates need at least 2 qubits");
    }
    Gate g;
    g.kind = kAllGateKinds[pick_index(kAllGateKinds.size(), rng)];
    assign_qubits(g, qubits, rng);
    if (is_rotation(g.kind)) {
        std::uniform_real_distribution<double> angle(0.0, kTwoPi);
        g.theta = angle(rng);
    }
    return g;
}

CircuitGenome random_genome(std::size_t qubits, const VariationConfig &cfg, Rng &rng) {
    if (qubits < 2) {
        throw ArgumentError("genomes need at least 2 qubits");
    }
    std::uniform_int_distribution<std::size_t> count(cfg.min_init_gates, cfg.max_init_gates);
    CircuitGenome g{qubits, {}};
    const std::size_t n = count(rng);
    g.gates.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        g.gates.push_back(random_gate(qubits, rng));
    }
    return g;
}

CircuitGenome mutate(const CircuitGenome &g, const VariationConfig &cfg, Rng &rng) {
    CircuitGenome out = g;
    auto &gates = out.gates;
    if (chance(cfg.p_add, rng) && gates.size() < cfg.max_gates) {
        std::uniform_int_distribution<std::size_t> pos(0, gates.size());
        const auto at = static_cast<std::ptrdiff_t>(pos(rng));
        gates.insert(gates.begin() + at, random_gate(out.qubits, rng));
    }
    if (chance(cfg.p_remove, rng) && !gates.empty()) {
        gates.erase(gates.begin() + static_cast<std::ptrdiff_t>(pick_index(gates.size(), rng)));
    }
    if (chance(cfg.p_kind_change, rng) && !gates.empty()) {
        Gate &victim = gates[pick_index(gates.size(), rng)];
        std::size_t k = pick_index(kAllGateKinds.size() - 1, rng);
        const auto old = static_cast<std::size_t>(victim.kind);
        if (k >= old) {
            ++k;
        }
        Gate fresh;
        fresh.kind = kAllGateKinds[k];
        assign_qubits(fresh, out.qubits, rng);
        if (is_rotation(fresh.kind)) {
            std::uniform_real_distribution<double> angle(0.0, kTwoPi);
            fresh.theta = angle(rng);
        }
        victim = fresh;
    }
    if (chance(cfg.p_rewire, rng) && !gates.empty()) {
        Gate &victim = gates[pick_index(gates.size(), rng)];
        assign_qubits(victim, out.qubits, rng);
    }
    if (cfg.p_angle_jitter > 0.0) {
        std::normal_distribution<double> jitter(0.0, cfg.angle_jitter_sigma);
        for (auto &gate : gates) {
            if (is_rotation(gate.kind) && chance(cfg.p_angle_jitter, rng)) {
                gate.theta = wrap_angle(gate.theta + jitter(rng));
            }
        }
    }
    if (gates.size() > cfg.max_gates) {
        gates.resize(cfg.max_gates);
    }
    return out;
}

CrossoverResult crossover(const CircuitGenome &a, const CircuitGenome &b, std::size_t max_gates, Rng &rng) {
    require_same_qubits(a, b);
    std::uniform_int_distribution<std::size_t> cut_a(0, a.gates.size());
    std::uniform_int_distribution<std::size_t> cut_b(0, b.gates.size());
    CrossoverResult r;
    r.cut_a = cut_a(rng);
    r.cut_b = cut_b(rng);
    const auto ca = static_cast<std::ptrdiff_t>(r.cut_a);
    const auto cb = static_cast<std::ptrdiff_t>(r.cut_b);
    r.first.qubits = r.second.qubits = a.qubits;
    r.first.gates.assign(a.gates.begin(), a.gates.begin() + ca);
    r.first.gates.insert(r.first.gates.end(), b.gates.begin() + cb, b.gates.end());
    r.second.gates.assign(b.gates.begin(), b.gates.begin() + cb);
    r.second.gates.insert(r.second.gates.end(), a.gates.begin() + ca, a.gates.end());
    if (r.first.gates.size() > max_gates) {
        r.first.gates.resize(max_gates);
    }
    if (r.second.gates.size() > max_gates) {
        r.second.gates.resize(max_gates);
    }
    return r;
}

std::size_t depth(const CircuitGenome &g) {
    std::vector<std::size_t> frontier(g.qubits, 0);
    std::size_t result = 0;
    for (const auto &gate : g.gates) {
        std::size_t moment = frontier.at(gate.target);
        if (gate.kind == GateKind::CNOT) {
            moment = std::max(moment, frontier.at(gate.control));
            frontier[gate.control] = moment + 1;
        }
        frontier[gate.target] = moment + 1;
        result = std::max(result, moment + 1);
    }
    return result;
}

std::size_t cnot_count(const CircuitGenome &g) {
    return static_cast<std::size_t>(
        std::count_if(g.gates.begin(), g.gates.end(), [](const Gate &x) { return x.kind == GateKind::CNOT; }));
}

int angle_bucket(double theta) {
    const int b = static_cast<int>(std::floor(wrap_angle(theta) / (std::numbers::pi / 8.0)));
    return std::clamp(b, 0, 15);
}

double structural_distance(const CircuitGenome &a, const CircuitGenome &b) {
    require_same_qubits(a, b);
    const std::size_t n = a.gates.size();
    const std::size_t m = b.gates.size();
    if (n == 0 && m == 0) {
        return 0.0;
    }
    std::vector<Token> ta(n);
    std::vector<Token> tb(m);
    std::transform(a.gates.begin(), a.gates.end(), ta.begin(), token);
    std::transform(b.gates.begin(), b.gates.end(), tb.begin(), token);
    // Two-row Levenshtein table.
    std::vector<std::size_t> prev(m + 1);
    std::vector<std::size_t> cur(m + 1);
    for (std::size_t j = 0; j <= m; ++j) {
        prev[j] = j;
    }
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= m; ++j) {
            const std::size_t sub = prev[j - 1] + (ta[i - 1] == tb[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return static_cast<double>(prev[m]) / static_cast<double>(std::max(n, m));
}

std::map<std::string, std::size_t> motif_report(const CircuitGenome &g) {
    std::map<std::string, std::size_t> report;
    // Per-qubit timelines of gate indices.
    std::vector<std::vector<std::size_t>> timeline(g.qubits);
    for (std::size_t i = 0; i < g.gates.size(); ++i) {
        const Gate &gate = g.gates[i];
        if (gate.kind == GateKind::CNOT) {
            timeline.at(gate.control).push_back(i);
        }
        timeline.at(gate.target).push_back(i);
    }
    std::size_t chains = 0;
    for (const auto &line : timeline) {
        for (std::size_t k = 0; k + 3 < line.size(); ++k) {
            if (g.gates[line[k]].kind == GateKind::CNOT && g.gates[line[k + 1]].kind == GateKind::RX &&
                g.gates[line[k + 2]].kind == GateKind::RY && g.gates[line[k + 3]].kind == GateKind::RZ) {
                ++chains;
            }
        }
    }
    report["cnot_rx_ry_rz"] = chains;

    std::vector<std::set<std::size_t>> controls(g.qubits);
    for (const auto &gate : g.gates) {
        if (gate.kind == GateKind::CNOT) {
            controls.at(gate.target).insert(gate.control);
        }
    }
    std::size_t max_fanin = 0;
    for (std::size_t q = 0; q < g.qubits; ++q) {
        report["fanin_q" + std::to_string(q)] = controls[q].size();
        max_fanin = std::max(max_fanin, controls[q].size());
    }
    report["max_fanin"] = max_fanin;
    return report;
}

} // namespace qusl
