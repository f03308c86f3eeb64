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
 * Versioned checkpoint files for resumable evolution runs.
 *
 * Layout: one ASCII header line
 *
 *     QUSLCKPT <version> <payload-bytes> <fnv1a64-hex>\n
 *
 * followed by a JSON payload holding the problem configuration and the
 * full EvolutionState. All random streams are derived from the seed and
 * the generation index, so the state needs no generator snapshots.
 */
#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "qusl/evolution.hpp"

namespace qusl {

constexpr int kCheckpointVersion = 1;

struct Checkpoint {
    EvolutionProblem problem;
    EvolutionState state;
};

nlohmann::json problem_to_json(const EvolutionProblem &problem);
EvolutionProblem problem_from_json(const nlohmann::json &j);
/// Equality on every field that affects results (the thread count is ignored).
bool same_problem(const EvolutionProblem &a, const EvolutionProblem &b);

std::string encode_checkpoint(const Checkpoint &ckpt);
/// Throws CheckpointError on bad magic, version, length or checksum.
Checkpoint decode_checkpoint(const std::string &bytes);

/// Writes via a temporary file and rename so a crash never leaves a partial checkpoint.
void checkpoint_save(const std::filesystem::path &path, const Checkpoint &ckpt);
Checkpoint checkpoint_load(const std::filesystem::path &path);

} // namespace qusl
