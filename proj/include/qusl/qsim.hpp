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
 * Dense state-vector simulation over {RX, RY, RZ, H, CNOT}, Pauli-trajectory
 * noise and single-qubit probability readout.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qusl/circuit.hpp"
#include "qusl/rng.hpp"

namespace qusl {

struct EmbeddingVector;

using Complex = std::complex<double>;

/// Pure q-qubit state; amplitude index bit k is qubit k.
class StateVector {
  public:
    /// |0...0> on the given number of qubits.
    explicit StateVector(std::size_t qubits);
    /// Real amplitudes are copied verbatim; no normalization is applied.
    StateVector(std::size_t qubits, std::span<const double> real_amplitudes);
    explicit StateVector(const EmbeddingVector &embedding);

    [[nodiscard]] std::size_t qubits() const noexcept { return qubits_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] std::span<Complex> amplitudes() noexcept { return amps_; }
    [[nodiscard]] double norm() const noexcept;

    friend bool operator==(const StateVector &, const StateVector &) = default;

  private:
    std::size_t qubits_;
    std::vector<Complex> amps_;
};

/**
 * @brief Per-gate Pauli noise probabilities.
 *
 * After every gate each touched qubit independently suffers a bit flip
 * (X) with p_bitflip, then a phase flip (Z) with p_phaseflip, then full
 * depolarization with p_depolarizing. Depolarization is realized as a
 * Pauli drawn uniformly from {I, X, Y, Z}, i.e. rho -> (1-p) rho + p I/2.
 */
struct NoiseConfig {
    double p_bitflip = 0.0;
    double p_phaseflip = 0.0;
    double p_depolarizing = 0.0;

    /// The composite 0.045 level, split equally across the three channels.
    static NoiseConfig composite(double total = 0.045) {
        return {total / 3.0, total / 3.0, total / 3.0};
    }

    [[nodiscard]] bool is_zero() const noexcept {
        return p_bitflip == 0.0 && p_phaseflip == 0.0 && p_depolarizing == 0.0;
    }

    friend bool operator==(const NoiseConfig &, const NoiseConfig &) = default;
};

/// Throws ArgumentError unless every probability is in [0,1] and they sum to at most 1.
void validate(const NoiseConfig &noise);

/// Pair of single-qubit |1> probabilities.
struct ProjectionPoint {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const ProjectionPoint &, const ProjectionPoint &) = default;
};

/// Execution options for a circuit run that ends in projection readout.
struct SimOptions {
    std::optional<NoiseConfig> noise;
    /// Trajectories averaged per readout when noise is present.
    std::size_t trajectories = 1;
    /// 0 reads exact probabilities; otherwise that many measurement shots are sampled.
    std::size_t shots = 0;
};

void apply_gate(StateVector &state, const Gate &gate);
[[nodiscard]] StateVector apply_gate(const StateVector &state, const Gate &gate);

void apply_pauli_x(StateVector &state, std::size_t qubit);
void apply_pauli_y(StateVector &state, std::size_t qubit);
void apply_pauli_z(StateVector &state, std::size_t qubit);

/// Runs the genome on a copy of the input. With noise, one Monte-Carlo
/// trajectory is drawn from rng; a zero NoiseConfig consumes no randomness.
StateVector run_circuit(const CircuitGenome &genome, const StateVector &input,
                        const std::optional<NoiseConfig> &noise, Rng &rng);
StateVector run_circuit(const CircuitGenome &genome, const EmbeddingVector &input,
                        const std::optional<NoiseConfig> &noise, Rng &rng);
/// Noiseless convenience overload.
StateVector run_circuit(const CircuitGenome &genome, const StateVector &input);

double qubit_one_probability(const StateVector &state, std::size_t qubit);

/// ((P(q0=1), P(q1=1)), (P(q2=1), P(q3=1))). Requires at least four qubits.
std::pair<ProjectionPoint, ProjectionPoint> projection_points(const StateVector &state);

/// Finite-shot estimate of the same four marginals.
std::pair<ProjectionPoint, ProjectionPoint> sampled_projection_points(const StateVector &state, std::size_t shots,
                                                                     Rng &rng);

/// Runs the circuit under the options and returns the readout, averaging over trajectories.
std::pair<ProjectionPoint, ProjectionPoint> run_projection(const CircuitGenome &genome,
                                                           const EmbeddingVector &input,
                                                           const SimOptions &options, Rng &rng);

} // namespace qusl
