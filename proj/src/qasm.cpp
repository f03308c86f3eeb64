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
#include "qusl/qasm.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <regex>
#include <sstream>

#include "qusl/error.hpp"

namespace qusl {

namespace {

std::string format_angle(double theta) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", theta);
    return buf;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())) != 0) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())) != 0) {
        s.remove_suffix(1);
    }
    return s;
}

} // namespace

std::string export_qasm(const CircuitGenome &genome) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    out << "qreg q[" << genome.qubits << "];\n";
    for (const auto &g : genome.gates) {
        switch (g.kind) {
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ: {
            const char *name = g.kind == GateKind::RX ? "rx" : g.kind == GateKind::RY ? "ry" : "rz";
            out << name << "(" << format_angle(g.theta) << ") q[" << g.target << "];\n";
            break;
        }
        case GateKind::H:
            out << "h q[" << g.target << "];\n";
            break;
        case GateKind::CNOT:
            out << "cx q[" << g.control << "],q[" << g.target << "];\n";
            break;
        }
    }
    return out.str();
}

CircuitGenome parse_qasm_subset(std::string_view text) {
    static const std::regex rotation(R"(^(rx|ry|rz)\(\s*([^)\s]+)\s*\)\s+q\[(\d+)\]\s*;$)");
    static const std::regex hadamard(R"(^h\s+q\[(\d+)\]\s*;$)");
    static const std::regex cnot(R"(^cx\s+q\[(\d+)\]\s*,\s*q\[(\d+)\]\s*;$)");
    static const std::regex qreg(R"(^qreg\s+q\[(\d+)\]\s*;$)");

    CircuitGenome g;
    bool have_header = false;
    bool have_qreg = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    std::size_t checked = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        std::string_view sv = raw;
        if (const auto c = sv.find("//"); c != std::string_view::npos) {
            sv = sv.substr(0, c);
        }
        const std::string line(trim(sv));
        if (line.empty()) {
            continue;
        }
        std::smatch m;
        if (line == "OPENQASM 2.0;") {
            have_header = true;
        } else if (line == "include \"qelib1.inc\";") {
            // standard library include carries no gates
        } else if (std::regex_match(line, m, qreg)) {
            if (have_qreg) {
                throw ParseError(line_no, "duplicate qreg declaration");
            }
            g.qubits = std::stoul(m[1].str());
            have_qreg = true;
        } else if (!have_qreg) {
            throw ParseError(line_no, "gate before qreg declaration: " + line);
        } else if (std::regex_match(line, m, rotation)) {
            const std::string angle = m[2].str();
            char *end = nullptr;
            const double theta = std::strtod(angle.c_str(), &end);
            if (end == angle.c_str() || *end != '\0') {
                throw ParseError(line_no, "bad angle '" + angle + "'");
            }
            const auto kind = m[1] == "rx" ? GateKind::RX : m[1] == "ry" ? GateKind::RY : GateKind::RZ;
            g.gates.push_back(Gate::rotation(kind, std::stoul(m[3].str()), theta));
        } else if (std::regex_match(line, m, hadamard)) {
            g.gates.push_back(Gate::h(std::stoul(m[1].str())));
        } else if (std::regex_match(line, m, cnot)) {
            g.gates.push_back(Gate::cnot(std::stoul(m[1].str()), std::stoul(m[2].str())));
        } else {
            throw ParseError(line_no, "unknown statement: " + line);
        }
        if (!g.gates.empty() && g.gates.size() > checked) {
            try {
                validate(CircuitGenome{g.qubits, {g.gates.back()}});
            } catch (const Error &e) {
                throw ParseError(line_no, e.what());
            }
            checked = g.gates.size();
        }
    }
    if (!have_header) {
        throw ParseError(1, "missing OPENQASM 2.0 header");
    }
    if (!have_qreg) {
        throw ParseError(line_no, "missing qreg declaration");
    }
    return g;
}

} // namespace qusl
