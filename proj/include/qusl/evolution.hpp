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
 * Projection-consistency fitness and the evolutionary architecture search:
 * tournament selection with a redundancy guard, non-dominated sorting over
 * (loss, depth, CNOT count), variation and elitist survivor selection.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "qusl/circuit.hpp"
#include "qusl/genome.hpp"
#include "qusl/image.hpp"
#include "qusl/qsim.hpp"
#include "qusl/triplet.hpp"

namespace qusl {

struct FitnessConfig {
    double alpha = 1.0;
    double beta = 1.0;
    std::size_t batch_size = 16;
    std::size_t validation_size = 32;
    double epsilon_guard = 1e-6;
    double f_cap = 1e6;
};

void validate(const FitnessConfig &cfg);

/// Crowding value given to boundary members of a front.
constexpr double kCrowdingBoundary = std::numeric_limits<double>::max();

struct FitnessRecord {
    double l_qm = 0.0;  ///< batch mean
    double delta = 0.0; ///< batch mean
    double loss = 0.0;  ///< batch mean of alpha * l_qm + beta * delta
    double f_obj = 0.0;
    std::size_t depth = 0;
    std::size_t cnot = 0;
    std::size_t pareto_front = 0;
    double crowding = 0.0;

    friend bool operator==(const FitnessRecord &, const FitnessRecord &) = default;
};

struct EvolutionConfig {
    std::size_t population = 20;
    std::size_t generations = 20;
    std::size_t tournament_size = 3;
    double redundancy_threshold = 0.15;
    std::size_t elitism = 2;
    std::uint64_t seed = 1;
    /// Worker threads for fitness evaluation; never changes results.
    std::size_t jobs = 1;
};

void validate(const EvolutionConfig &cfg);

/// Everything the search needs besides the dataset.
struct EvolutionProblem {
    std::size_t qubits = kDefaultQubits;
    PerturbationConfig perturbation;
    PairOrientation orientation = PairOrientation::NegativeFirst;
    SimOptions sim;
    FitnessConfig fitness;
    VariationConfig variation;
    EvolutionConfig evolution;
};

/// Readout of both training runs for one triplet.
struct TripletProjections {
    ProjectionPoint anchor_p; ///< anchor, (A,P) run
    ProjectionPoint positive;
    ProjectionPoint negative;
    ProjectionPoint anchor_n; ///< anchor, (A,N) run
};

/**
 * Run 1 embeds interweave(anchor, positive): qubits (0,1) give the anchor,
 * (2,3) the positive. Run 2 embeds the (anchor, negative) pair in the
 * requested orientation and reads the same qubits.
 */
TripletProjections pair_projections(const CircuitGenome &g, const Triplet &t, PairOrientation orientation,
                                    const SimOptions &sim, Rng &rng);

struct TripletLoss {
    double l_qm = 0.0;
    double delta = 0.0;
};

/// l_qm = |A_p - P|_1 - |N - A_n|_1 and delta = |A_p - A_n|_1 over the two coordinates.
TripletLoss triplet_loss(const TripletProjections &p);

/// 1/loss outside the epsilon guard, otherwise sign(loss) * f_cap with 0 mapping to +f_cap.
double guarded_fitness(double loss, const FitnessConfig &cfg);

FitnessRecord batch_fitness(const CircuitGenome &g, std::span<const Triplet> batch, const FitnessConfig &cfg,
                            PairOrientation orientation, const SimOptions &sim, Rng &rng);

/// True when a is no worse than b on (loss, depth, cnot) and strictly better on one.
bool dominates(const FitnessRecord &a, const FitnessRecord &b);

/// Assigns pareto_front (0 = non-dominated) and crowding distance in place.
void non_dominated_sort(std::vector<FitnessRecord> &records);

/// Strict selection order: lower front, higher crowding, lower loss, lower index.
bool better_ranked(const FitnessRecord &a, std::size_t ia, const FitnessRecord &b, std::size_t ib);

/// Index of the tournament winner. Among sampled near-duplicates
/// (structural distance below the threshold) the worse-ranked one is dropped first.
std::size_t tournament_select(std::span<const CircuitGenome> population, std::span<const FitnessRecord> records,
                              const EvolutionConfig &cfg, Rng &rng);

/// A triplet reproducible from the dataset: the anchor index plus the seed of
/// the stream that draws the perturbation and the negative.
struct TripletSpec {
    std::size_t anchor = 0;
    std::uint64_t seed = 0;

    friend bool operator==(const TripletSpec &, const TripletSpec &) = default;
};

Triplet materialize(std::span<const ImagePatch> dataset, const TripletSpec &spec, const PerturbationConfig &cfg);

struct GenerationLog {
    std::size_t generation = 0;
    std::vector<FitnessRecord> records;
    std::vector<double> validation_losses;
    double champion_validation_loss = 0.0;

    friend bool operator==(const GenerationLog &, const GenerationLog &) = default;
};

/// Complete resumable search state between generations.
struct EvolutionState {
    /// Index of the next generation to evaluate.
    std::size_t generation = 0;
    std::vector<CircuitGenome> population;
    std::vector<TripletSpec> validation;
    CircuitGenome champion;
    double champion_loss = std::numeric_limits<double>::infinity();
    std::vector<GenerationLog> history;

    friend bool operator==(const EvolutionState &, const EvolutionState &) = default;
};

/**
 * @brief Generation-by-generation driver.
 *
 * All randomness is drawn from streams derived from (seed, purpose,
 * generation, individual), so the state between generations fully
 * determines the rest of the run regardless of the thread count.
 */
class Evolver {
  public:
    /// Patches that do not fit the qubit budget are downsampled first.
    Evolver(std::vector<ImagePatch> dataset, EvolutionProblem problem);

    [[nodiscard]] EvolutionState initial_state() const;
    /// Evaluates state.generation and breeds the next population if any generation remains.
    void step(EvolutionState &state) const;
    [[nodiscard]] bool finished(const EvolutionState &state) const {
        return state.generation > problem_.evolution.generations;
    }
    /// Steps until finished, calling on_generation after each one.
    void run(EvolutionState &state, const std::function<void(const EvolutionState &)> &on_generation = {}) const;

    [[nodiscard]] std::vector<TripletSpec> sample_batch(std::uint64_t tag_value, std::size_t generation,
                                                        std::size_t count) const;
    [[nodiscard]] std::vector<Triplet> materialize_batch(std::span<const TripletSpec> specs) const;

    [[nodiscard]] const EvolutionProblem &problem() const noexcept { return problem_; }
    [[nodiscard]] const std::vector<ImagePatch> &dataset() const noexcept { return dataset_; }

  private:
    std::vector<ImagePatch> dataset_;
    EvolutionProblem problem_;
};

struct EvolutionResult {
    CircuitGenome best;
    EvolutionState state;
};

EvolutionResult evolve(std::vector<ImagePatch> dataset, const EvolutionProblem &problem);

/// history.csv: generation,individual,loss,f_obj,l_qm_mean,delta_mean,depth,cnot,front,crowding
std::string history_csv(const std::vector<GenerationLog> &history);
/// archive.csv: generation,champion_validation_loss
std::string archive_csv(const std::vector<GenerationLog> &history);

} // namespace qusl
