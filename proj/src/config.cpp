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
#include "qusl/config.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "qusl/error.hpp"

namespace qusl {

namespace {

/// Shortest text that parses back to exactly v.
std::string fmt_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view v) {
    const std::string s(v);
    char *end = nullptr;
    errno = 0;
    const double d = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(d)) {
        throw ConfigError(std::string(key), "expected a real number, got '" + s + "'");
    }
    return d;
}

std::uint64_t to_u64(std::string_view key, std::string_view v) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) {
        throw ConfigError(std::string(key), "expected a non-negative integer, got '" + std::string(v) + "'");
    }
    return out;
}

bool to_bool(std::string_view key, std::string_view v) {
    if (v == "true" || v == "1" || v == "yes") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no") {
        return false;
    }
    throw ConfigError(std::string(key), "expected true or false, got '" + std::string(v) + "'");
}

struct Field {
    const char *key;
    std::function<void(RunConfig &, std::string_view, std::string_view)> set;
    std::function<std::string(const RunConfig &)> get;
};

template <typename Member> Field real_field(const char *key, Member member) {
    return {key, [member](RunConfig &c, std::string_view k, std::string_view v) { member(c) = to_double(k, v); },
            [member](const RunConfig &c) { return fmt_double(member(const_cast<RunConfig &>(c))); }};
}

template <typename Member> Field count_field(const char *key, Member member) {
    return {key,
            [member](RunConfig &c, std::string_view k, std::string_view v) {
                member(c) = static_cast<std::remove_reference_t<decltype(member(c))>>(to_u64(k, v));
            },
            [member](const RunConfig &c) { return std::to_string(member(const_cast<RunConfig &>(c))); }};
}

const std::vector<Field> &fields() {
    static const std::vector<Field> table = [] {
        std::vector<Field> f;
        f.push_back(count_field("triplet.qubits", [](RunConfig &c) -> auto & { return c.problem.qubits; }));
        f.push_back(real_field("triplet.sigma", [](RunConfig &c) -> auto & { return c.problem.perturbation.sigma; }));
        f.push_back({"triplet.pair_orientation",
                     [](RunConfig &c, std::string_view k, std::string_view v) {
                         if (v == "negative_first") {
                             c.problem.orientation = PairOrientation::NegativeFirst;
                         } else if (v == "anchor_first") {
                             c.problem.orientation = PairOrientation::AnchorFirst;
                         } else {
                             throw ConfigError(std::string(k), "expected negative_first or anchor_first");
                         }
                     },
                     [](const RunConfig &c) {
                         return std::string(c.problem.orientation == PairOrientation::NegativeFirst ? "negative_first"
                                                                                                    : "anchor_first");
                     }});

        f.push_back(real_field("fitness.alpha", [](RunConfig &c) -> auto & { return c.problem.fitness.alpha; }));
        f.push_back(real_field("fitness.beta", [](RunConfig &c) -> auto & { return c.problem.fitness.beta; }));
        f.push_back(
            count_field("fitness.batch_size", [](RunConfig &c) -> auto & { return c.problem.fitness.batch_size; }));
        f.push_back(count_field("fitness.validation_size",
                                [](RunConfig &c) -> auto & { return c.problem.fitness.validation_size; }));
        f.push_back(real_field("fitness.epsilon_guard",
                               [](RunConfig &c) -> auto & { return c.problem.fitness.epsilon_guard; }));
        f.push_back(real_field("fitness.f_cap", [](RunConfig &c) -> auto & { return c.problem.fitness.f_cap; }));

        f.push_back(count_field("evolution.population",
                                [](RunConfig &c) -> auto & { return c.problem.evolution.population; }));
        f.push_back(count_field("evolution.generations",
                                [](RunConfig &c) -> auto & { return c.problem.evolution.generations; }));
        f.push_back(count_field("evolution.tournament_size",
                                [](RunConfig &c) -> auto & { return c.problem.evolution.tournament_size; }));
        f.push_back(real_field("evolution.redundancy_threshold",
                               [](RunConfig &c) -> auto & { return c.problem.evolution.redundancy_threshold; }));
        f.push_back(
            count_field("evolution.elitism", [](RunConfig &c) -> auto & { return c.problem.evolution.elitism; }));
        f.push_back(count_field("evolution.seed", [](RunConfig &c) -> auto & { return c.problem.evolution.seed; }));

        f.push_back(real_field("variation.p_add", [](RunConfig &c) -> auto & { return c.problem.variation.p_add; }));
        f.push_back(
            real_field("variation.p_remove", [](RunConfig &c) -> auto & { return c.problem.variation.p_remove; }));
        f.push_back(real_field("variation.p_kind_change",
                               [](RunConfig &c) -> auto & { return c.problem.variation.p_kind_change; }));
        f.push_back(
            real_field("variation.p_rewire", [](RunConfig &c) -> auto & { return c.problem.variation.p_rewire; }));
        f.push_back(real_field("variation.p_angle_jitter",
                               [](RunConfig &c) -> auto & { return c.problem.variation.p_angle_jitter; }));
        f.push_back(real_field("variation.angle_jitter_sigma",
                               [](RunConfig &c) -> auto & { return c.problem.variation.angle_jitter_sigma; }));
        f.push_back(count_field("variation.min_init_gates",
                                [](RunConfig &c) -> auto & { return c.problem.variation.min_init_gates; }));
        f.push_back(count_field("variation.max_init_gates",
                                [](RunConfig &c) -> auto & { return c.problem.variation.max_init_gates; }));
        f.push_back(
            count_field("variation.max_gates", [](RunConfig &c) -> auto & { return c.problem.variation.max_gates; }));

        f.push_back({"noise.enabled",
                     [](RunConfig &c, std::string_view k, std::string_view v) { c.noise_enabled = to_bool(k, v); },
                     [](const RunConfig &c) { return std::string(c.noise_enabled ? "true" : "false"); }});
        f.push_back(real_field("noise.p_bitflip", [](RunConfig &c) -> auto & { return c.noise.p_bitflip; }));
        f.push_back(real_field("noise.p_phaseflip", [](RunConfig &c) -> auto & { return c.noise.p_phaseflip; }));
        f.push_back(
            real_field("noise.p_depolarizing", [](RunConfig &c) -> auto & { return c.noise.p_depolarizing; }));
        f.push_back(
            count_field("noise.trajectories", [](RunConfig &c) -> auto & { return c.problem.sim.trajectories; }));
        f.push_back(count_field("noise.shots", [](RunConfig &c) -> auto & { return c.problem.sim.shots; }));

        f.push_back(count_field("eval.n_pairs", [](RunConfig &c) -> auto & { return c.n_pairs; }));
        f.push_back({"eval.distance",
                     [](RunConfig &c, std::string_view k, std::string_view v) {
                         if (v == "hist") {
                             c.distance = DistanceMode::Histogram;
                         } else if (v == "pixel") {
                             c.distance = DistanceMode::Pixel;
                         } else {
                             throw ConfigError(std::string(k), "expected hist or pixel");
                         }
                     },
                     [](const RunConfig &c) {
                         return std::string(c.distance == DistanceMode::Histogram ? "hist" : "pixel");
                     }});
        f.push_back(count_field("eval.histogram_bins", [](RunConfig &c) -> auto & { return c.histogram_bins; }));
        f.push_back({"eval.ssim_matching",
                     [](RunConfig &c, std::string_view k, std::string_view v) {
                         if (v == "role") {
                             c.matching = SsimMatching::Role;
                         } else if (v == "identity") {
                             c.matching = SsimMatching::Identity;
                         } else {
                             throw ConfigError(std::string(k), "expected role or identity");
                         }
                     },
                     [](const RunConfig &c) {
                         return std::string(c.matching == SsimMatching::Role ? "role" : "identity");
                     }});
        f.push_back(count_field("eval.seed", [](RunConfig &c) -> auto & { return c.eval_seed; }));
        f.push_back(count_field("eval.baseline_layers", [](RunConfig &c) -> auto & { return c.baseline_layers; }));
        return f;
    }();
    return table;
}

void require(bool ok, const char *key, const std::string &what) {
    if (!ok) {
        throw ConfigError(key, what);
    }
}

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

} // namespace

EvolutionProblem RunConfig::resolved_problem() const {
    EvolutionProblem p = problem;
    p.sim.noise.reset();
    if (noise_enabled) {
        p.sim.noise = noise;
    }
    return p;
}

EvalOptions RunConfig::eval_options() const {
    EvalOptions o;
    o.distance = distance;
    o.histogram_bins = histogram_bins;
    o.matching = matching;
    o.sim = resolved_problem().sim;
    o.seed = eval_seed;
    o.jobs = problem.evolution.jobs;
    return o;
}

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const auto &f : fields()) {
        keys.emplace_back(f.key);
    }
    return keys;
}

void set_config_value(RunConfig &cfg, std::string_view key, std::string_view value) {
    for (const auto &f : fields()) {
        if (key == f.key) {
            f.set(cfg, key, trim(value));
            return;
        }
    }
    throw ConfigError(std::string(key), "unknown configuration key");
}

RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    std::string section;
    std::set<std::string> seen;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto c = line.find_first_of("#;"); c != std::string_view::npos) {
            line = line.substr(0, c);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("line " + std::to_string(line_no), "unterminated section header");
            }
            section = std::string(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no), "expected key = value");
        }
        const std::string name(trim(line.substr(0, eq)));
        const std::string key = section.empty() ? name : section + "." + name;
        if (!seen.insert(key).second) {
            throw ConfigError(key, "duplicate key");
        }
        set_config_value(cfg, key, line.substr(eq + 1));
    }
    validate(cfg);
    return cfg;
}

std::string render_config(const RunConfig &cfg) {
    std::ostringstream out;
    std::string section;
    for (const auto &f : fields()) {
        const std::string key = f.key;
        const auto dot = key.find('.');
        const std::string sec = key.substr(0, dot);
        if (sec != section) {
            out << (section.empty() ? "" : "\n") << "[" << sec << "]\n";
            section = sec;
        }
        out << key.substr(dot + 1) << " = " << f.get(cfg) << "\n";
    }
    return out.str();
}

void validate(const RunConfig &cfg) {
    const auto &p = cfg.problem;
    require(p.qubits >= 4 && p.qubits <= 24, "triplet.qubits", "must lie in [4, 24]");
    require(p.perturbation.sigma >= 0.0, "triplet.sigma", "must be >= 0");

    require(p.fitness.alpha > 0.0, "fitness.alpha", "must be > 0");
    require(p.fitness.beta > 0.0, "fitness.beta", "must be > 0");
    require(p.fitness.batch_size >= 1, "fitness.batch_size", "must be >= 1");
    require(p.fitness.validation_size >= 1, "fitness.validation_size", "must be >= 1");
    require(p.fitness.epsilon_guard > 0.0, "fitness.epsilon_guard", "must be > 0");
    require(p.fitness.f_cap > 0.0, "fitness.f_cap", "must be > 0");

    const auto &e = p.evolution;
    require(e.population >= 2, "evolution.population", "must be >= 2");
    require(e.tournament_size >= 2 && e.tournament_size <= e.population, "evolution.tournament_size",
            "must lie in [2, population]");
    require(is_probability(e.redundancy_threshold), "evolution.redundancy_threshold", "must lie in [0,1]");
    require(e.elitism < e.population, "evolution.elitism", "must be smaller than the population");

    const auto &v = p.variation;
    require(is_probability(v.p_add), "variation.p_add", "must lie in [0,1]");
    require(is_probability(v.p_remove), "variation.p_remove", "must lie in [0,1]");
    require(is_probability(v.p_kind_change), "variation.p_kind_change", "must lie in [0,1]");
    require(is_probability(v.p_rewire), "variation.p_rewire", "must lie in [0,1]");
    require(is_probability(v.p_angle_jitter), "variation.p_angle_jitter", "must lie in [0,1]");
    require(v.angle_jitter_sigma >= 0.0, "variation.angle_jitter_sigma", "must be >= 0");
    require(v.min_init_gates <= v.max_init_gates, "variation.min_init_gates", "must not exceed max_init_gates");
    require(v.max_init_gates <= v.max_gates, "variation.max_init_gates", "must not exceed max_gates");

    require(is_probability(cfg.noise.p_bitflip), "noise.p_bitflip", "must lie in [0,1]");
    require(is_probability(cfg.noise.p_phaseflip), "noise.p_phaseflip", "must lie in [0,1]");
    require(is_probability(cfg.noise.p_depolarizing), "noise.p_depolarizing", "must lie in [0,1]");
    require(cfg.noise.p_bitflip + cfg.noise.p_phaseflip + cfg.noise.p_depolarizing <= 1.0 + 1e-12,
            "noise.p_depolarizing", "noise probabilities must sum to at most 1");
    require(p.sim.trajectories >= 1, "noise.trajectories", "must be >= 1");

    require(cfg.n_pairs >= 2, "eval.n_pairs", "must be >= 2");
    require(cfg.histogram_bins >= 1 && cfg.histogram_bins <= 256, "eval.histogram_bins", "must lie in [1, 256]");
    require(cfg.baseline_layers >= 1, "eval.baseline_layers", "must be >= 1");
}

} // namespace qusl
