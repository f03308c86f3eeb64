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
#pragma once

#include <string>
#include <string_view>

#include "qusl/circuit.hpp"

namespace qusl {

/**
 * OpenQASM 2.0 text: header, qreg declaration, one statement per gate.
 * Angles use 17 significant digits so parse_qasm_subset() restores them
 * bit-exactly.
 */
std::string export_qasm(const CircuitGenome &genome);

/// Parses the subset emitted by export_qasm(). Throws ParseError with the line number.
CircuitGenome parse_qasm_subset(std::string_view text);

} // namespace qusl
