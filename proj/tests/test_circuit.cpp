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
#include <random>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "qusl/circuit.hpp"
#include "qusl/error.hpp"
#include "qusl/genome.hpp"
#include "qusl/qasm.hpp"
#include "qusl/rng.hpp"
#include "support/oracles.hpp"

namespace {

using namespace qusl;

TEST(GateKind, NamesRoundTrip) {
    for (const auto k : kAllGateKinds) {
        EXPECT_EQ(parse_gate_kind(gate_kind_name(k)), k);
    }
    EXPECT_FALSE(parse_gate_kind("CZ").has_value());
}

TEST(Validate, RejectsBrokenGenomes) {
    EXPECT_NO_THROW(validate(CircuitGenome{2, {Gate::cnot(0, 1)}}));
    EXPECT_THROW(validate(CircuitGenome{2, {Gate::h(2)}}), IndexError);
    EXPECT_THROW(validate(CircuitGenome{2, {Gate::cnot(2, 1)}}), IndexError);
    EXPECT_THROW(validate(CircuitGenome{2, {Gate::cnot(1, 1)}}), ArgumentError);
    EXPECT_THROW(validate(CircuitGenome{2, {Gate::rx(0, NAN)}}), ArgumentError);
}

TEST(GenomeJson, RoundTripIsExact) {
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = oracle::random_circuit(6, 25, gen);
        EXPECT_EQ(genome_from_json_text(genome_to_json_text(g)), g);
    }
}

TEST(GenomeJson, SchemaFields) {
    const CircuitGenome g{3, {Gate::rx(0, 0.5), Gate::cnot(1, 0), Gate::h(2)}};
    const auto j = genome_to_json(g);
    EXPECT_EQ(j.at("format"), "qusl-genome");
    EXPECT_EQ(j.at("version"), 1);
    EXPECT_EQ(j.at("qubits"), 3);
    EXPECT_EQ(j.at("gates")[0].at("theta"), 0.5);
    EXPECT_FALSE(j.at("gates")[0].contains("control"));
    EXPECT_EQ(j.at("gates")[1].at("control"), 1);
    EXPECT_FALSE(j.at("gates")[2].contains("theta"));
}

TEST(GenomeJson, RejectsMalformedInput) {
    EXPECT_THROW((void)genome_from_json_text("{"), FormatError);
    EXPECT_THROW((void)genome_from_json_text(R"({"qubits": 2, "gates": [{"kind": "CZ", "target": 0}]})"),
                 FormatError);
    EXPECT_THROW((void)genome_from_json_text(R"({"qubits": 2, "gates": [{"kind": "RX", "target": 0}]})"),
                 FormatError);
    EXPECT_THROW((void)genome_from_json_text(R"({"version": 2, "qubits": 2, "gates": []})"), FormatError);
    EXPECT_THROW((void)genome_from_json_text(R"({"qubits": 2, "gates": [{"kind": "H", "target": 5}]})"),
                 IndexError);
}

TEST(Qasm, EmptyGenomeIsHeaderOnly) {
    const std::string text = export_qasm(CircuitGenome{2, {}});
    EXPECT_EQ(text, "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\n");
    EXPECT_EQ(parse_qasm_subset(text), (CircuitGenome{2, {}}));
}

TEST(Qasm, GateLines) {
    const std::string text = export_qasm(CircuitGenome{3, {Gate::h(0), Gate::cnot(2, 1), Gate::ry(1, 0.25)}});
    EXPECT_NE(text.find("\nh q[0];\n"), std::string::npos);
    EXPECT_NE(text.find("\ncx q[2],q[1];\n"), std::string::npos);
    EXPECT_NE(text.find("\nry(0.25) q[1];\n"), std::string::npos);
    std::size_t count = 0;
    for (std::size_t p = text.find("h q[0];"); p != std::string::npos; p = text.find("h q[0];", p + 1)) {
        ++count;
    }
    EXPECT_EQ(count, 1U);
    const auto parsed = parse_qasm_subset("OPENQASM 2.0;\nqreg q[1];\nh q[0];\n");
    EXPECT_EQ(parsed, (CircuitGenome{1, {Gate::h(0)}}));
}

TEST(Qasm, RandomGenomesRoundTripWithExactAngles) {
    std::mt19937_64 gen(77);
    std::uniform_real_distribution<double> any(-1e3, 1e3);
    for (int trial = 0; trial < 200; ++trial) {
        auto g = oracle::random_circuit(5, 30, gen);
        for (auto &gate : g.gates) {
            if (is_rotation(gate.kind)) {
                gate.theta = any(gen);
            }
        }
        EXPECT_EQ(parse_qasm_subset(export_qasm(g)), g);
    }
}

TEST(Qasm, ErrorsCarryLineNumbers) {
    try {
        (void)parse_qasm_subset("OPENQASM 2.0;\nqreg q[2];\nh q[0];\nmeasure q[0] -> c[0];\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 4U);
    }
    try {
        (void)parse_qasm_subset("OPENQASM 2.0;\nqreg q[2];\n\ncx q[1],q[1];\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 4U);
    }
    EXPECT_THROW((void)parse_qasm_subset("qreg q[2];\n"), ParseError);
    EXPECT_THROW((void)parse_qasm_subset("OPENQASM 2.0;\nh q[0];\n"), ParseError);
    EXPECT_THROW((void)parse_qasm_subset("OPENQASM 2.0;\nqreg q[2];\nrx(abc) q[0];\n"), ParseError);
}

} // namespace
