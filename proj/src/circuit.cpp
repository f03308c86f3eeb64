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
#include "qusl/circuit.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "qusl/error.hpp"

namespace qusl {

std::string_view gate_kind_name(GateKind k) noexcept {
    switch (k) {
    case GateKind::RX:
        return "RX";
    case GateKind::RY:
        return "RY";
    case GateKind::RZ:
        return "RZ";
    case GateKind::H:
        return "H";
    case GateKind::CNOT:
        return "CNOT";
    }
    return "?";
}

std::optional<GateKind> parse_gate_kind(std::string_view name) noexcept {
    for (auto k : kAllGateKinds) {
        if (gate_kind_name(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

void validate(const CircuitGenome &g) {
    for (std::size_t i = 0; i < g.gates.size(); ++i) {
        const Gate &gate = g.gates[i];
        const std::string where = "gate " + std::to_string(i) + ": ";
        if (gate.target >= g.qubits) {
            throw IndexError(where + "target qubit " + std::to_string(gate.target) + " out of range");
        }
        if (gate.kind == GateKind::CNOT) {
            if (gate.control >= g.qubits) {
                throw IndexError(where + "control qubit " + std::to_string(gate.control) + " out of range");
            }
            if (gate.control == gate.target) {
                throw ArgumentError(where + "CNOT control equals target");
            }
        }
        if (!std::isfinite(gate.theta)) {
            throw ArgumentError(where + "non-finite angle");
        }
    }
}

nlohmann::json genome_to_json(const CircuitGenome &g) {
    nlohmann::json gates = nlohmann::json::array();
    for (const auto &gate : g.gates) {
        nlohmann::json j{{"kind", gate_kind_name(gate.kind)}, {"target", gate.target}};
        if (gate.kind == GateKind::CNOT) {
            j["control"] = gate.control;
        }
        if (is_rotation(gate.kind)) {
            j["theta"] = gate.theta;
        }
        gates.push_back(std::move(j));
    }
    return {{"format", "qusl-genome"}, {"version", 1}, {"qubits", g.qubits}, {"gates", std::move(gates)}};
}

CircuitGenome genome_from_json(const nlohmann::json &j) {
    try {
        if (j.contains("version") && j.at("version").get<int>() != 1) {
            throw FormatError("unsupported genome version");
        }
        CircuitGenome g;
        g.qubits = j.at("qubits").get<std::size_t>();
        for (const auto &jg : j.at("gates")) {
            const auto name = jg.at("kind").get<std::string>();
            const auto kind = parse_gate_kind(name);
            if (!kind) {
                throw FormatError("unknown gate kind '" + name + "'");
            }
            Gate gate{*kind, jg.at("target").get<std::size_t>(), 0, 0.0};
            if (*kind == GateKind::CNOT) {
                gate.control = jg.at("control").get<std::size_t>();
            }
            if (is_rotation(*kind)) {
                gate.theta = jg.at("theta").get<double>();
            }
            g.gates.push_back(gate);
        }
        validate(g);
        return g;
    } catch (const nlohmann::json::exception &e) {
        throw FormatError(std::string("malformed genome JSON: ") + e.what());
    }
}

std::string genome_to_json_text(const CircuitGenome &g) { return genome_to_json(g).dump(2) + "\n"; }

CircuitGenome genome_from_json_text(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw FormatError(std::string("malformed genome JSON: ") + e.what());
    }
    return genome_from_json(j);
}

} // namespace qusl
