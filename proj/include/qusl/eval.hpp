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
 * Similarity scoring by label-swapped mappings, Spearman correlation
 * against the classical distance, and the ladder template baseline.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qusl/circuit.hpp"
#include "qusl/image.hpp"
#include "qusl/qsim.hpp"

namespace qusl {

/**
 * How the four readout points of the two mappings are compared.
 *  - Role: |A1 - A2| + |P1 - P2|, matching points by the slot they occupy.
 *  - Identity: |A1 - P2| + |P1 - A2|, following each image across the swap.
 */
enum class SsimMatching { Role, Identity };

/// Mapping 1 embeds interweave(img1, img2), mapping 2 interweave(img2, img1);
/// the score is the L1 difference of their readouts under the matching.
double similarity_score(const CircuitGenome &g, const ImagePatch &img1, const ImagePatch &img2,
                        SsimMatching matching, const SimOptions &sim, Rng &rng);

/// Ranks starting at 1, ties receive the average of the positions they span.
std::vector<double> average_ranks(std::span<const double> xs);

/// Pearson correlation of average ranks. Throws ArgumentError for mismatched
/// lengths, fewer than two values or a constant series.
double spearman(std::span<const double> xs, std::span<const double> ys);

struct EvalOptions {
    DistanceMode distance = DistanceMode::Histogram;
    std::size_t histogram_bins = kDefaultHistogramBins;
    SsimMatching matching = SsimMatching::Role;
    SimOptions sim;
    std::uint64_t seed = 1;
    std::size_t jobs = 1;
};

struct SimilarityPair {
    std::size_t a = 0;
    std::size_t b = 0;
    double s_sim = 0.0;
    double ed = 0.0;
};

struct SimilarityReport {
    std::vector<SimilarityPair> pairs;
    /// Empty when either series is constant (undefined correlation).
    std::optional<double> rho;
    EvalOptions options;
};

/// Random index pairs (a != b) drawn from the seed; rho = spearman(s_sim, ed).
std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(std::size_t dataset_size, std::size_t n_pairs,
                                                              std::uint64_t seed);
SimilarityReport evaluate_model(const CircuitGenome &g, std::span<const ImagePatch> dataset, std::size_t n_pairs,
                                const EvalOptions &options);
/// Same as evaluate_model on an explicit list of pairs.
SimilarityReport evaluate_pairs(const CircuitGenome &g, std::span<const ImagePatch> dataset,
                                std::span<const std::pair<std::size_t, std::size_t>> pairs,
                                const EvalOptions &options);

/// Per layer: RX, RY, RZ with random angles on each qubit, then a CNOT ladder i -> i+1.
CircuitGenome baseline_template(std::size_t qubits, std::size_t layers, Rng &rng);
constexpr std::size_t kDefaultBaselineLayers = 4;

/// {genome_file, n_pairs, distance_mode, matching, rho, pairs: [{a, b, s_sim, ed}]}; rho is null when undefined.
nlohmann::json report_to_json(const SimilarityReport &report, const std::string &genome_file);
/// Header "ed,s_sim", one row per pair.
std::string scatter_csv(const SimilarityReport &report);

} // namespace qusl
