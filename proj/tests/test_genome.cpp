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
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <tuple>
#include <vector>

#include <gtest/gtest.h>

#include "qusl/error.hpp"
#include "qusl/genome.hpp"
#include "qusl/rng.hpp"
#include "support/circuits.hpp"
#include "support/oracles.hpp"

namespace {

using namespace qusl;

VariationConfig no_mutation() {
    VariationConfig cfg;
    cfg.p_add = cfg.p_remove = cfg.p_kind_change = cfg.p_rewire = cfg.p_angle_jitter = 0.0;
    return cfg;
}

void expect_valid(const CircuitGenome &g, const VariationConfig &cfg) {
    EXPECT_NO_THROW(validate(g));
    EXPECT_LE(g.gates.size(), cfg.max_gates);
    for (const auto &gate : g.gates) {
        if (is_rotation(gate.kind)) {
            EXPECT_GE(gate.theta, 0.0);
            EXPECT_LT(gate.theta, 2.0 * std::numbers::pi);
        } else {
            EXPECT_EQ(gate.theta, 0.0);
        }
        if (gate.kind != GateKind::CNOT) {
            EXPECT_EQ(gate.control, 0U);
        }
    }
}

TEST(RandomGenome, EmptyWhenBoundsAreZero) {
    VariationConfig cfg;
    cfg.min_init_gates = cfg.max_init_gates = 0;
    Rng rng(1);
    EXPECT_TRUE(random_genome(4, cfg, rng).gates.empty());
}

TEST(RandomGenome, KindFrequenciesAndInvariants) {
    const VariationConfig cfg;
    Rng rng(2);
    std::map<GateKind, double> kinds;
    double total = 0.0;
    std::size_t min_len = 1000;
    std::size_t max_len = 0;
    for (int i = 0; i < 10000; ++i) {
        const auto g = random_genome(6, cfg, rng);
        min_len = std::min(min_len, g.gates.size());
        max_len = std::max(max_len, g.gates.size());
        for (const auto &gate : g.gates) {
            kinds[gate.kind] += 1.0;
            total += 1.0;
            if (gate.kind == GateKind::CNOT) {
                ASSERT_NE(gate.control, gate.target);
            }
        }
        if (i % 500 == 0) {
            expect_valid(g, cfg);
        }
    }
    EXPECT_EQ(min_len, cfg.min_init_gates);
    EXPECT_EQ(max_len, cfg.max_init_gates);
    for (const auto k : kAllGateKinds) {
        EXPECT_NEAR(kinds[k] / total, 0.2, 0.02);
    }
}

TEST(Mutate, ZeroProbabilitiesLeaveGenomeUnchanged) {
    Rng rng(3);
    const auto g = random_genome(5, VariationConfig{}, rng);
    EXPECT_EQ(mutate(g, no_mutation(), rng), g);
}

TEST(Mutate, CertainRemovalEmptiesSingleGateGenome) {
    auto cfg = no_mutation();
    cfg.p_remove = 1.0;
    Rng rng(4);
    EXPECT_TRUE(mutate(CircuitGenome{3, {Gate::h(1)}}, cfg, rng).gates.empty());
}

TEST(Mutate, AngleJitterHasConfiguredSpread) {
    auto cfg = no_mutation();
    cfg.p_angle_jitter = 1.0;
    cfg.angle_jitter_sigma = 0.1;
    const CircuitGenome g{2, {Gate::rx(0, 3.0)}};
    Rng rng(5);
    double sum = 0.0;
    double sq = 0.0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const auto m = mutate(g, cfg, rng);
        ASSERT_EQ(m.gates.size(), 1U);
        ASSERT_EQ(cnot_count(m), 0U);
        const double d = m.gates[0].theta - 3.0;
        sum += d;
        sq += d * d;
    }
    const double mean = sum / n;
    EXPECT_NEAR(std::sqrt(sq / n - mean * mean), 0.1, 0.01);
}

TEST(Mutate, JitterWrapsIntoRange) {
    auto cfg = no_mutation();
    cfg.p_angle_jitter = 1.0;
    cfg.angle_jitter_sigma = 1.0;
    Rng rng(6);
    for (int i = 0; i < 500; ++i) {
        const auto m = mutate(CircuitGenome{1, {Gate::rz(0, 0.01)}}, cfg, rng);
        EXPECT_GE(m.gates[0].theta, 0.0);
        EXPECT_LT(m.gates[0].theta, 2.0 * std::numbers::pi);
    }
}

TEST(Mutate, KindChangeAlwaysChangesKind) {
    auto cfg = no_mutation();
    cfg.p_kind_change = 1.0;
    Rng rng(7);
    for (int i = 0; i < 500; ++i) {
        const auto m = mutate(CircuitGenome{3, {Gate::h(2)}}, cfg, rng);
        ASSERT_EQ(m.gates.size(), 1U);
        EXPECT_NE(m.gates[0].kind, GateKind::H);
    }
}

TEST(Variation, OperatorsPreserveInvariants) {
    VariationConfig cfg;
    cfg.p_add = cfg.p_remove = cfg.p_kind_change = cfg.p_rewire = 0.7;
    cfg.max_gates = 30;
    cfg.max_init_gates = 30;
    Rng rng(8);
    std::vector<CircuitGenome> pool;
    for (int i = 0; i < 20; ++i) {
        pool.push_back(random_genome(4, cfg, rng));
    }
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int i = 0; i < 10000; ++i) {
        const auto &a = pool[pick(rng)];
        const auto &b = pool[pick(rng)];
        const auto x = crossover(a, b, cfg.max_gates, rng);
        const auto child = mutate(i % 2 == 0 ? x.first : x.second, cfg, rng);
        ASSERT_NO_THROW(validate(child));
        ASSERT_LE(child.gates.size(), cfg.max_gates);
        pool[pick(rng)] = child;
    }
}

TEST(Crossover, ReconstructsFromRecordedCuts) {
    Rng rng(9);
    const VariationConfig cfg;
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_genome(5, cfg, rng);
        const auto b = random_genome(5, cfg, rng);
        const auto r = crossover(a, b, 1000, rng);
        std::vector<Gate> first(a.gates.begin(), a.gates.begin() + static_cast<std::ptrdiff_t>(r.cut_a));
        first.insert(first.end(), b.gates.begin() + static_cast<std::ptrdiff_t>(r.cut_b), b.gates.end());
        std::vector<Gate> second(b.gates.begin(), b.gates.begin() + static_cast<std::ptrdiff_t>(r.cut_b));
        second.insert(second.end(), a.gates.begin() + static_cast<std::ptrdiff_t>(r.cut_a), a.gates.end());
        EXPECT_EQ(r.first.gates, first);
        EXPECT_EQ(r.second.gates, second);
        EXPECT_EQ(r.first.gates.size() + r.second.gates.size(), a.gates.size() + b.gates.size());
    }
}

TEST(Crossover, EdgeCases) {
    Rng rng(10);
    const auto r = crossover(CircuitGenome{3, {}}, CircuitGenome{3, {}}, 10, rng);
    EXPECT_TRUE(r.first.gates.empty());
    EXPECT_TRUE(r.second.gates.empty());
    EXPECT_THROW((void)crossover(CircuitGenome{3, {}}, CircuitGenome{4, {}}, 10, rng), DimensionError);

    const auto g = random_genome(4, VariationConfig{}, rng);
    for (int i = 0; i < 50; ++i) {
        const auto s = crossover(g, g, 1000, rng);
        if (s.cut_a == s.cut_b) {
            EXPECT_EQ(s.first, g);
            EXPECT_EQ(s.second, g);
        }
        const auto t = crossover(g, g, 5, rng);
        EXPECT_LE(t.first.gates.size(), 5U);
        EXPECT_LE(t.second.gates.size(), 5U);
    }
}

TEST(Depth, HandCountedCircuits) {
    for (const auto &c : fixtures::counted_circuits()) {
        EXPECT_EQ(depth(c.genome), c.depth) << c.name;
        EXPECT_EQ(cnot_count(c.genome), c.cnot) << c.name;
        EXPECT_EQ(oracle::dag_depth(c.genome), c.depth) << c.name;
    }
}

TEST(Depth, MatchesDagLongestPath) {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 300; ++trial) {
        const auto g = oracle::random_circuit(14, 10 + trial % 100, gen);
        EXPECT_EQ(depth(g), oracle::dag_depth(g));
        EXPECT_LE(depth(g), g.gates.size());
    }
}

TEST(Depth, AllGatesOnOneQubitAreSequential) {
    std::mt19937_64 gen(12);
    CircuitGenome g{4, {}};
    for (int i = 0; i < 17; ++i) {
        g.gates.push_back(i % 3 == 0 ? Gate::cnot(1 + static_cast<std::size_t>(i) % 3, 0) : Gate::ry(0, 0.1 * i));
    }
    EXPECT_EQ(depth(g), 17U);
}

std::tuple<int, std::size_t, std::size_t, int> token_of(const Gate &g) {
    return {static_cast<int>(g.kind), g.target, g.kind == GateKind::CNOT ? g.control : 0,
            is_rotation(g.kind) ? static_cast<int>(std::floor(g.theta / (std::numbers::pi / 8.0))) : -1};
}

double oracle_distance(const CircuitGenome &a, const CircuitGenome &b) {
    std::vector<std::tuple<int, std::size_t, std::size_t, int>> ta;
    std::vector<std::tuple<int, std::size_t, std::size_t, int>> tb;
    for (const auto &g : a.gates) {
        ta.push_back(token_of(g));
    }
    for (const auto &g : b.gates) {
        tb.push_back(token_of(g));
    }
    const std::size_t longest = std::max(ta.size(), tb.size());
    return longest == 0 ? 0.0 : static_cast<double>(oracle::edit_distance(ta, tb)) / static_cast<double>(longest);
}

TEST(StructuralDistance, Examples) {
    Rng rng(13);
    const auto g = random_genome(4, VariationConfig{}, rng);
    EXPECT_EQ(structural_distance(g, g), 0.0);
    EXPECT_EQ(structural_distance(CircuitGenome{4, {}}, g), 1.0);
    CircuitGenome ten{4, {}};
    for (int i = 0; i < 10; ++i) {
        ten.gates.push_back(Gate::h(static_cast<std::size_t>(i) % 4));
    }
    auto changed = ten;
    changed.gates[6] = Gate::cnot(0, 3);
    EXPECT_DOUBLE_EQ(structural_distance(ten, changed), 0.1);
    EXPECT_THROW((void)structural_distance(ten, CircuitGenome{5, {}}), DimensionError);
}

TEST(StructuralDistance, BucketsAbsorbSmallAngleChanges) {
    const CircuitGenome a{1, {Gate::rx(0, 0.05)}};
    const CircuitGenome b{1, {Gate::rx(0, 0.30)}};
    const CircuitGenome c{1, {Gate::rx(0, 0.50)}};
    EXPECT_EQ(structural_distance(a, b), 0.0);
    EXPECT_EQ(structural_distance(a, c), 1.0);
    EXPECT_EQ(angle_bucket(2.0 * std::numbers::pi - 1e-12), 15);
}

TEST(StructuralDistance, MatchesEditDistanceOracleAndIsPseudometric) {
    Rng rng(14);
    VariationConfig cfg;
    cfg.min_init_gates = 0;
    cfg.max_init_gates = 25;
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_genome(3, cfg, rng);
        const auto b = mutate(a, cfg, rng);
        const auto c = random_genome(3, cfg, rng);
        EXPECT_DOUBLE_EQ(structural_distance(a, b), oracle_distance(a, b));
        EXPECT_DOUBLE_EQ(structural_distance(a, c), oracle_distance(a, c));
        EXPECT_EQ(structural_distance(a, c), structural_distance(c, a));
        EXPECT_LE(structural_distance(a, c), structural_distance(a, b) + structural_distance(b, c) + 1e-12);
    }
}

std::map<std::string, std::size_t> motif_oracle(const CircuitGenome &g) {
    std::map<std::string, std::size_t> out;
    const auto &gs = g.gates;
    std::size_t chains = 0;
    for (std::size_t q = 0; q < g.qubits; ++q) {
        for (std::size_t i = 0; i < gs.size(); ++i) {
            if (gs[i].kind != GateKind::CNOT || !gs[i].touches(q)) {
                continue;
            }
            // Next three gates touching q, scanning forward.
            std::vector<GateKind> next;
            for (std::size_t j = i + 1; j < gs.size() && next.size() < 3; ++j) {
                if (gs[j].touches(q)) {
                    next.push_back(gs[j].kind);
                }
            }
            chains += next == std::vector<GateKind>{GateKind::RX, GateKind::RY, GateKind::RZ} ? 1 : 0;
        }
    }
    out["cnot_rx_ry_rz"] = chains;
    std::size_t max_fanin = 0;
    for (std::size_t q = 0; q < g.qubits; ++q) {
        std::size_t distinct = 0;
        for (std::size_t c = 0; c < g.qubits; ++c) {
            bool seen = false;
            for (const auto &gate : gs) {
                seen = seen || (gate.kind == GateKind::CNOT && gate.target == q && gate.control == c);
            }
            distinct += seen ? 1 : 0;
        }
        out["fanin_q" + std::to_string(q)] = distinct;
        max_fanin = std::max(max_fanin, distinct);
    }
    out["max_fanin"] = max_fanin;
    return out;
}

TEST(MotifReport, Examples) {
    const auto empty = motif_report(CircuitGenome{2, {}});
    for (const auto &[name, count] : empty) {
        EXPECT_EQ(count, 0U) << name;
    }
    const CircuitGenome chain{2, {Gate::cnot(0, 1), Gate::rx(1, 0.1), Gate::ry(1, 0.2), Gate::rz(1, 0.3)}};
    const auto r = motif_report(chain);
    EXPECT_EQ(r.at("cnot_rx_ry_rz"), 1U);
    EXPECT_EQ(r.at("fanin_q1"), 1U);
    EXPECT_EQ(r.at("max_fanin"), 1U);

    const auto land = motif_report(fixtures::landscape_structure());
    EXPECT_EQ(land.at("cnot_rx_ry_rz"), 24U);
    EXPECT_EQ(land.at("fanin_q0"), 13U);
}

TEST(MotifReport, MatchesQuadraticScan) {
    Rng rng(15);
    VariationConfig cfg;
    cfg.min_init_gates = 20;
    cfg.max_init_gates = 60;
    for (int trial = 0; trial < 300; ++trial) {
        const auto g = random_genome(2 + static_cast<std::size_t>(trial % 3), cfg, rng);
        EXPECT_EQ(motif_report(g), motif_oracle(g));
    }
}

TEST(VariationConfig, Validation) {
    EXPECT_NO_THROW(validate(VariationConfig{}));
    VariationConfig bad;
    bad.p_add = 1.5;
    EXPECT_THROW(validate(bad), ArgumentError);
    VariationConfig order;
    order.min_init_gates = 50;
    EXPECT_THROW(validate(order), ArgumentError);
}

} // namespace
