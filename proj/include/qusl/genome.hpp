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
/**
 * @file
 * Variation operators and structural metrics over circuit genomes.
 */
#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "qusl/circuit.hpp"
#include "qusl/rng.hpp"

namespace qusl {

struct VariationConfig {
    double p_add = 0.30;
    double p_remove = 0.30;
    double p_kind_change = 0.15;
    double p_rewire = 0.15;
    double p_angle_jitter = 0.5;
    double angle_jitter_sigma = 0.2;
    std::size_t min_init_gates = 10;
    std::size_t max_init_gates = 40;
    std::size_t max_gates = 80;
};

/// Throws ArgumentError when a probability leaves [0,1] or the gate bounds are out of order.
void validate(const VariationConfig &cfg);

/// Uniform kind, uniform qubits (distinct for CNOT), angle uniform in [0, 2pi).
Gate random_gate(std::size_t qubits, Rng &rng);

CircuitGenome random_genome(std::size_t qubits, const VariationConfig &cfg, Rng &rng);

/**
 * Applies, each with its own probability: insertion of a random gate,
 * deletion of a random gate, a kind change with resampled parameters and a
 * qubit rewire. Every rotation angle is then jittered with probability
 * p_angle_jitter. Angles stay wrapped to [0, 2pi).
 */
CircuitGenome mutate(const CircuitGenome &g, const VariationConfig &cfg, Rng &rng);

struct CrossoverResult {
    CircuitGenome first;  ///< a[0, cut_a) + b[cut_b, end)
    CircuitGenome second; ///< b[0, cut_b) + a[cut_a, end)
    std::size_t cut_a = 0;
    std::size_t cut_b = 0;
};

/// Single-point crossover with independent cut points; offspring truncated to max_gates.
CrossoverResult crossover(const CircuitGenome &a, const CircuitGenome &b, std::size_t max_gates, Rng &rng);

/// Moments under as-soon-as-possible scheduling; gates conflict when they share a qubit.
std::size_t depth(const CircuitGenome &g);
std::size_t cnot_count(const CircuitGenome &g);

/// Levenshtein distance over gate tokens divided by the longer length, in [0,1].
double structural_distance(const CircuitGenome &a, const CircuitGenome &b);

/// Angle bucket (16 bins of width pi/8) used by the structural tokens.
int angle_bucket(double theta);

/**
 * Motif counts:
 *  - "cnot_rx_ry_rz": positions on a qubit's own gate timeline where a CNOT
 *    touching it is followed by RX, RY, RZ on that qubit;
 *  - "fanin_q<k>": distinct control qubits of CNOTs targeting qubit k;
 *  - "max_fanin": the largest of those.
 */
std::map<std::string, std::size_t> motif_report(const CircuitGenome &g);

} // namespace qusl
