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
#include <string>

#include <gtest/gtest.h>

#include "qusl/config.hpp"
#include "qusl/error.hpp"

namespace {

using namespace qusl;

TEST(Config, DefaultsRenderAndReparseExactly) {
    const RunConfig defaults;
    const std::string text = render_config(defaults);
    const RunConfig back = parse_config(text);
    EXPECT_EQ(render_config(back), text);
    EXPECT_EQ(back.problem.evolution.population, 20U);
    EXPECT_EQ(back.problem.evolution.generations, 20U);
    EXPECT_EQ(back.problem.qubits, 14U);
    EXPECT_EQ(back.problem.perturbation.sigma, 5.0);
    EXPECT_EQ(back.n_pairs, 1000U);
    EXPECT_EQ(back.baseline_layers, 4U);
    EXPECT_FALSE(back.noise_enabled);
    EXPECT_NE(text.find("[noise]\n"), std::string::npos);
}

TEST(Config, EveryKeyIsRendered) {
    const std::string text = render_config(RunConfig{});
    for (const auto &key : config_keys()) {
        const auto dot = key.find('.');
        EXPECT_NE(text.find("[" + key.substr(0, dot) + "]"), std::string::npos) << key;
        EXPECT_NE(text.find("\n" + key.substr(dot + 1) + " = "), std::string::npos) << key;
    }
}

TEST(Config, ParsesSectionsCommentsAndValues) {
    const auto cfg = parse_config(R"(
# desk-scale run
[triplet]
qubits = 10
sigma = 2.5      ; lighter perturbation
pair_orientation = anchor_first

[evolution]
population = 10
generations = 10
seed = 42

[noise]
enabled = true
p_depolarizing = 0.045
p_bitflip = 0
p_phaseflip = 0
trajectories = 4

[eval]
distance = pixel
ssim_matching = identity
)");
    EXPECT_EQ(cfg.problem.qubits, 10U);
    EXPECT_EQ(cfg.problem.perturbation.sigma, 2.5);
    EXPECT_EQ(cfg.problem.orientation, PairOrientation::AnchorFirst);
    EXPECT_EQ(cfg.problem.evolution.seed, 42U);
    EXPECT_EQ(cfg.distance, DistanceMode::Pixel);
    EXPECT_EQ(cfg.matching, SsimMatching::Identity);
    const auto p = cfg.resolved_problem();
    ASSERT_TRUE(p.sim.noise.has_value());
    EXPECT_EQ(p.sim.noise->p_depolarizing, 0.045);
    EXPECT_EQ(p.sim.trajectories, 4U);
    EXPECT_FALSE(RunConfig{}.resolved_problem().sim.noise.has_value());
}

TEST(Config, ErrorsNameTheKey) {
    auto key_of = [](const std::string &text) {
        try {
            (void)parse_config(text);
        } catch (const ConfigError &e) {
            return e.key();
        }
        return std::string("<no error>");
    };
    EXPECT_EQ(key_of("[evolution]\npopulaton = 5\n"), "evolution.populaton");
    EXPECT_EQ(key_of("[evolution]\npopulation = many\n"), "evolution.population");
    EXPECT_EQ(key_of("[evolution]\npopulation = 1\n"), "evolution.population");
    EXPECT_EQ(key_of("[evolution]\ntournament_size = 50\n"), "evolution.tournament_size");
    EXPECT_EQ(key_of("[evolution]\nelitism = 20\n"), "evolution.elitism");
    EXPECT_EQ(key_of("[fitness]\nalpha = 0\n"), "fitness.alpha");
    EXPECT_EQ(key_of("[triplet]\nsigma = -1\n"), "triplet.sigma");
    EXPECT_EQ(key_of("[triplet]\npair_orientation = sideways\n"), "triplet.pair_orientation");
    EXPECT_EQ(key_of("[variation]\np_add = 1.5\n"), "variation.p_add");
    EXPECT_EQ(key_of("[variation]\nmin_init_gates = 60\n"), "variation.min_init_gates");
    EXPECT_EQ(key_of("[noise]\np_bitflip = 0.6\np_phaseflip = 0.6\n"), "noise.p_depolarizing");
    EXPECT_EQ(key_of("[noise]\nenabled = maybe\n"), "noise.enabled");
    EXPECT_EQ(key_of("[eval]\ndistance = cosine\n"), "eval.distance");
    EXPECT_EQ(key_of("[eval]\nn_pairs = 1\n"), "eval.n_pairs");
    EXPECT_EQ(key_of("[eval]\nseed = 1\nseed = 2\n"), "eval.seed");
    EXPECT_EQ(key_of("qubits = 10\n"), "qubits");
    EXPECT_EQ(key_of("[triplet\n"), "line 1");
    EXPECT_EQ(key_of("[triplet]\nqubits 10\n"), "line 2");
}

TEST(Config, SetValueAndEvalOptions) {
    RunConfig cfg;
    set_config_value(cfg, "eval.histogram_bins", "8");
    set_config_value(cfg, "eval.seed", "9");
    set_config_value(cfg, "noise.enabled", "true");
    const auto opts = cfg.eval_options();
    EXPECT_EQ(opts.histogram_bins, 8U);
    EXPECT_EQ(opts.seed, 9U);
    EXPECT_TRUE(opts.sim.noise.has_value());
    EXPECT_THROW(set_config_value(cfg, "eval.bogus", "1"), ConfigError);
}

} // namespace
