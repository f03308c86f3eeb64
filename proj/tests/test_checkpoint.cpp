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
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>

#include <gtest/gtest.h>
#include <unistd.h>

#include "qusl/checkpoint.hpp"
#include "qusl/dataset.hpp"
#include "qusl/error.hpp"
#include "qusl/evolution.hpp"

namespace {

using namespace qusl;
namespace fs = std::filesystem;

EvolutionProblem problem(std::uint64_t seed) {
    EvolutionProblem p;
    p.qubits = 8;
    p.evolution.population = 6;
    p.evolution.generations = 6;
    p.evolution.seed = seed;
    p.fitness.batch_size = 4;
    p.fitness.validation_size = 5;
    p.variation.min_init_gates = 4;
    p.variation.max_init_gates = 10;
    p.sim.noise = NoiseConfig{0.01, 0.02, 0.003};
    p.sim.trajectories = 2;
    p.perturbation.sigma = 7.25;
    p.orientation = PairOrientation::AnchorFirst;
    return p;
}

TEST(Checkpoint, EncodeDecodeIsExact) {
    const auto p = problem(3);
    const Evolver evolver(make_synthetic_dataset(10, 5, 1), p);
    auto state = evolver.initial_state();
    const Checkpoint fresh{p, state};
    const auto back0 = decode_checkpoint(encode_checkpoint(fresh));
    EXPECT_EQ(back0.state, state);
    EXPECT_EQ(back0.state.champion_loss, std::numeric_limits<double>::infinity());
    evolver.step(state);
    evolver.step(state);
    const auto back = decode_checkpoint(encode_checkpoint({p, state}));
    EXPECT_EQ(back.state, state);
    EXPECT_TRUE(same_problem(back.problem, p));
    EXPECT_FALSE(same_problem(back.problem, problem(4)));
}

TEST(Checkpoint, InterruptAndResumeMatchesUninterruptedRun) {
    const auto p = problem(5);
    const auto data = make_synthetic_dataset(12, 5, 2);
    const Evolver evolver(data, p);
    auto whole = evolver.initial_state();
    evolver.run(whole);

    const fs::path path = fs::temp_directory_path() / ("qusl_ckpt_" + std::to_string(::getpid()) + ".ckpt");
    auto part = evolver.initial_state();
    for (int g = 0; g < 3; ++g) {
        evolver.step(part);
    }
    checkpoint_save(path, {p, part});
    part = EvolutionState{};

    const Evolver restarted(data, checkpoint_load(path).problem);
    auto resumed = checkpoint_load(path).state;
    restarted.run(resumed);
    fs::remove(path);
    EXPECT_EQ(resumed, whole);
    EXPECT_EQ(history_csv(resumed.history), history_csv(whole.history));
}

TEST(Checkpoint, CorruptionIsDetected) {
    const auto p = problem(6);
    const Evolver evolver(make_synthetic_dataset(8, 5, 3), p);
    auto state = evolver.initial_state();
    evolver.step(state);
    const std::string good = encode_checkpoint({p, state});

    EXPECT_THROW((void)decode_checkpoint(good.substr(0, good.size() - 10)), CheckpointError);
    EXPECT_THROW((void)decode_checkpoint(""), CheckpointError);
    std::string flipped = good;
    flipped[good.size() / 2] ^= 0x01;
    EXPECT_THROW((void)decode_checkpoint(flipped), CheckpointError);
    std::string future = good;
    future.replace(future.find(' ') + 1, 1, "9");
    try {
        (void)decode_checkpoint(future);
        FAIL() << "expected CheckpointError";
    } catch (const CheckpointError &e) {
        EXPECT_NE(std::string(e.what()).find("version"), std::string::npos);
    }
    EXPECT_THROW((void)checkpoint_load("/nonexistent/dir/x.ckpt"), CheckpointError);
}

} // namespace
