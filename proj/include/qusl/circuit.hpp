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
 * Gate and circuit-genome value types shared by the simulator and the
 * evolutionary search.
 *
 * Qubit indexing convention: qubit k is bit k of a basis-state index, so
 * qubit 0 is the least-significant bit. Embedding, readout and QASM export
 * all follow it.
 */
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace qusl {

enum class GateKind { RX, RY, RZ, H, CNOT };

constexpr std::array<GateKind, 5> kAllGateKinds{GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::H,
                                                GateKind::CNOT};

constexpr bool is_rotation(GateKind k) noexcept {
    return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ;
}

std::string_view gate_kind_name(GateKind k) noexcept;
/// Accepts the names produced by gate_kind_name ("RX", ..., "CNOT").
std::optional<GateKind> parse_gate_kind(std::string_view name) noexcept;

/**
 * @brief One gate of the {RX, RY, RZ, H, CNOT} set.
 *
 * control is meaningful only for CNOT and theta only for rotations; the
 * factory functions keep the unused fields zeroed so that value
 * comparison is exact.
 */
struct Gate {
    GateKind kind = GateKind::H;
    std::size_t target = 0;
    std::size_t control = 0;
    double theta = 0.0;

    static Gate rx(std::size_t t, double theta) { return {GateKind::RX, t, 0, theta}; }
    static Gate ry(std::size_t t, double theta) { return {GateKind::RY, t, 0, theta}; }
    static Gate rz(std::size_t t, double theta) { return {GateKind::RZ, t, 0, theta}; }
    static Gate rotation(GateKind k, std::size_t t, double theta) { return {k, t, 0, theta}; }
    static Gate h(std::size_t t) { return {GateKind::H, t, 0, 0.0}; }
    static Gate cnot(std::size_t control, std::size_t target) { return {GateKind::CNOT, target, control, 0.0}; }

    [[nodiscard]] bool touches(std::size_t q) const noexcept {
        return target == q || (kind == GateKind::CNOT && control == q);
    }

    friend bool operator==(const Gate &, const Gate &) = default;
};

/// An evolvable circuit architecture: a qubit count and an ordered gate list.
struct CircuitGenome {
    std::size_t qubits = 0;
    std::vector<Gate> gates;

    friend bool operator==(const CircuitGenome &, const CircuitGenome &) = default;
};

/// Throws IndexError/ArgumentError if a gate addresses a missing qubit,
/// a CNOT has control == target, or an angle is not finite.
void validate(const CircuitGenome &g);

/**
 * Genome JSON schema, version 1:
 *
 *     {"format": "qusl-genome", "version": 1, "qubits": n,
 *      "gates": [{"kind": "RX", "target": 0, "theta": 0.5},
 *                {"kind": "CNOT", "control": 1, "target": 0},
 *                {"kind": "H", "target": 2}]}
 */
nlohmann::json genome_to_json(const CircuitGenome &g);
CircuitGenome genome_from_json(const nlohmann::json &j);

std::string genome_to_json_text(const CircuitGenome &g);
CircuitGenome genome_from_json_text(const std::string &text);

} // namespace qusl
