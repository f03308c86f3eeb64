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
 * Run configuration: every tunable of the pipeline in one flat
 * "section.key = value" namespace, parsed from INI-style text.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qusl/eval.hpp"
#include "qusl/evolution.hpp"

namespace qusl {

struct RunConfig {
    EvolutionProblem problem;
    /// Whether the noise section is active; the probabilities are kept either way.
    bool noise_enabled = false;
    NoiseConfig noise = NoiseConfig::composite();

    std::size_t n_pairs = 1000;
    DistanceMode distance = DistanceMode::Histogram;
    std::size_t histogram_bins = kDefaultHistogramBins;
    SsimMatching matching = SsimMatching::Role;
    std::uint64_t eval_seed = 1;
    std::size_t baseline_layers = kDefaultBaselineLayers;

    /// Problem with the noise section folded into its simulation options.
    [[nodiscard]] EvolutionProblem resolved_problem() const;
    [[nodiscard]] EvalOptions eval_options() const;
};

/// All recognized keys, as "section.key", in rendering order.
std::vector<std::string> config_keys();

/// Sets one "section.key" from its text value. Throws ConfigError naming the key.
void set_config_value(RunConfig &cfg, std::string_view key, std::string_view value);

/**
 * Parses INI-style text: "[section]" headers, "key = value" lines, '#' or
 * ';' comments. Keys are looked up as "section.key"; unknown keys, bad
 * values and duplicate keys are errors. The result is fully validated.
 */
RunConfig parse_config(std::string_view text);

/// Every key with its current value; parse_config(render_config(c)) reproduces c exactly.
std::string render_config(const RunConfig &cfg);

/// Checks every module's invariants; throws ConfigError naming the first offending key.
void validate(const RunConfig &cfg);

} // namespace qusl
