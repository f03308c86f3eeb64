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
#include "qusl/qsim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "qusl/error.hpp"
#include "qusl/triplet.hpp"

namespace qusl {

namespace {

using Matrix2 = std::array<Complex, 4>; // row-major

constexpr std::size_t kMaxQubits = 30;

void check_qubit(const StateVector &state, std::size_t q) {
    if (q >= state.qubits()) {
        throw IndexError("qubit " + std::to_string(q) + " out of range for " + std::to_string(state.qubits()) +
                         "-qubit state");
    }
}

void apply_matrix(std::span<Complex> amps, std::size_t qubit, const Matrix2 &m) {
    const std::size_t stride = std::size_t{1} << qubit;
    const std::size_t dim = amps.size();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t j = base; j < base + stride; ++j) {
            const Complex a0 = amps[j];
            const Complex a1 = amps[j + stride];
            amps[j] = m[0] * a0 + m[1] * a1;
            amps[j + stride] = m[2] * a0 + m[3] * a1;
        }
    }
}

Matrix2 gate_matrix(const Gate &g) {
    using namespace std::complex_literals;
    const double c = std::cos(g.theta / 2.0);
    const double s = std::sin(g.theta / 2.0);
    switch (g.kind) {
    case GateKind::RX:
        return {c, -1i * s, -1i * s, c};
    case GateKind::RY:
        return {c, -s, s, c};
    case GateKind::RZ:
        return {Complex{c, -s}, 0.0, 0.0, Complex{c, s}};
    case GateKind::H: {
        const double r = std::numbers::sqrt2 / 2.0;
        return {r, r, r, -r};
    }
    case GateKind::CNOT:
        break;
    }
    throw ArgumentError("CNOT has no single-qubit matrix");
}

void apply_cnot(std::span<Complex> amps, std::size_t control, std::size_t target) {
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        // Visit each swapped pair once, from its target-bit-0 member.
        if ((i & cmask) != 0 && (i & tmask) == 0) {
            std::swap(amps[i], amps[i | tmask]);
        }
    }
}

void apply_noise_on(StateVector &state, std::size_t qubit, const NoiseConfig &noise, Rng &rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (unit(rng) < noise.p_bitflip) {
        apply_pauli_x(state, qubit);
    }
    if (unit(rng) < noise.p_phaseflip) {
        apply_pauli_z(state, qubit);
    }
    if (unit(rng) < noise.p_depolarizing) {
        std::uniform_int_distribution<int> pauli(0, 3);
        switch (pauli(rng)) {
        case 1:
            apply_pauli_x(state, qubit);
            break;
        case 2:
            apply_pauli_y(state, qubit);
            break;
        case 3:
            apply_pauli_z(state, qubit);
            break;
        default:
            break;
        }
    }
}

void require_readout_qubits(const StateVector &state) {
    if (state.qubits() < 4) {
        throw CapacityError("projection readout needs at least 4 qubits");
    }
}

} // namespace

StateVector::StateVector(std::size_t qubits) : qubits_(qubits) {
    if (qubits == 0 || qubits > kMaxQubits) {
        throw ArgumentError("qubit count must be in [1, 30]");
    }
    amps_.assign(std::size_t{1} << qubits, Complex{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t qubits, std::span<const double> real_amplitudes) : StateVector(qubits) {
    if (real_amplitudes.size() != amps_.size()) {
        throw DimensionError("amplitude count " + std::to_string(real_amplitudes.size()) + " does not match 2^" +
                             std::to_string(qubits));
    }
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        amps_[i] = real_amplitudes[i];
    }
}

StateVector::StateVector(const EmbeddingVector &embedding) : StateVector(embedding.qubits, embedding.amplitudes) {}

double StateVector::norm() const noexcept {
    double sum = 0.0;
    for (const auto &a : amps_) {
        sum += std::norm(a);
    }
    return std::sqrt(sum);
}

void validate(const NoiseConfig &noise) {
    for (double p : {noise.p_bitflip, noise.p_phaseflip, noise.p_depolarizing}) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw ArgumentError("noise probabilities must lie in [0,1]");
        }
    }
    if (noise.p_bitflip + noise.p_phaseflip + noise.p_depolarizing > 1.0 + 1e-12) {
        throw ArgumentError("noise probabilities must sum to at most 1");
    }
}

void apply_gate(StateVector &state, const Gate &gate) {
    check_qubit(state, gate.target);
    if (gate.kind == GateKind::CNOT) {
        check_qubit(state, gate.control);
        if (gate.control == gate.target) {
            throw ArgumentError("CNOT control equals target");
        }
        apply_cnot(state.amplitudes(), gate.control, gate.target);
        return;
    }
    apply_matrix(state.amplitudes(), gate.target, gate_matrix(gate));
}

StateVector apply_gate(const StateVector &state, const Gate &gate) {
    StateVector out = state;
    apply_gate(out, gate);
    return out;
}

void apply_pauli_x(StateVector &state, std::size_t qubit) {
    check_qubit(state, qubit);
    apply_matrix(state.amplitudes(), qubit, {0.0, 1.0, 1.0, 0.0});
}

void apply_pauli_y(StateVector &state, std::size_t qubit) {
    using namespace std::complex_literals;
    check_qubit(state, qubit);
    apply_matrix(state.amplitudes(), qubit, {0.0, -1i, 1i, 0.0});
}

void apply_pauli_z(StateVector &state, std::size_t qubit) {
    check_qubit(state, qubit);
    apply_matrix(state.amplitudes(), qubit, {1.0, 0.0, 0.0, -1.0});
}

StateVector run_circuit(const CircuitGenome &genome, const StateVector &input,
                        const std::optional<NoiseConfig> &noise, Rng &rng) {
    if (genome.qubits != input.qubits()) {
        throw DimensionError("genome has " + std::to_string(genome.qubits) + " qubits but input has " +
                             std::to_string(input.qubits()));
    }
    const bool noisy = noise.has_value() && !noise->is_zero();
    if (noisy) {
        validate(*noise);
    }
    StateVector state = input;
    for (const auto &gate : genome.gates) {
        apply_gate(state, gate);
        if (noisy) {
            if (gate.kind == GateKind::CNOT) {
                apply_noise_on(state, gate.control, *noise, rng);
            }
            apply_noise_on(state, gate.target, *noise, rng);
        }
    }
    return state;
}

StateVector run_circuit(const CircuitGenome &genome, const EmbeddingVector &input,
                        const std::optional<NoiseConfig> &noise, Rng &rng) {
    return run_circuit(genome, StateVector(input), noise, rng);
}

StateVector run_circuit(const CircuitGenome &genome, const StateVector &input) {
    Rng unused{0};
    return run_circuit(genome, input, std::nullopt, unused);
}

double qubit_one_probability(const StateVector &state, std::size_t qubit) {
    check_qubit(state, qubit);
    const std::size_t mask = std::size_t{1} << qubit;
    const auto amps = state.amplitudes();
    double p = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) != 0) {
            p += std::norm(amps[i]);
        }
    }
    return std::clamp(p, 0.0, 1.0);
}

std::pair<ProjectionPoint, ProjectionPoint> projection_points(const StateVector &state) {
    require_readout_qubits(state);
    // One pass accumulating all four marginals.
    std::array<double, 4> p{};
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double w = std::norm(amps[i]);
        for (std::size_t k = 0; k < 4; ++k) {
            if (((i >> k) & 1U) != 0) {
                p[k] += w;
            }
        }
    }
    for (auto &v : p) {
        v = std::clamp(v, 0.0, 1.0);
    }
    return {{p[0], p[1]}, {p[2], p[3]}};
}

std::pair<ProjectionPoint, ProjectionPoint> sampled_projection_points(const StateVector &state, std::size_t shots,
                                                                     Rng &rng) {
    require_readout_qubits(state);
    if (shots == 0) {
        throw ArgumentError("shot count must be positive");
    }
    std::vector<double> weights(state.dimension());
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < weights.size(); ++i) {
        weights[i] = std::norm(amps[i]);
    }
    std::discrete_distribution<std::size_t> outcome(weights.begin(), weights.end());
    std::array<std::size_t, 4> ones{};
    for (std::size_t s = 0; s < shots; ++s) {
        const std::size_t idx = outcome(rng);
        for (std::size_t k = 0; k < 4; ++k) {
            ones[k] += (idx >> k) & 1U;
        }
    }
    const auto n = static_cast<double>(shots);
    return {{static_cast<double>(ones[0]) / n, static_cast<double>(ones[1]) / n},
            {static_cast<double>(ones[2]) / n, static_cast<double>(ones[3]) / n}};
}

std::pair<ProjectionPoint, ProjectionPoint> run_projection(const CircuitGenome &genome,
                                                           const EmbeddingVector &input,
                                                           const SimOptions &options, Rng &rng) {
    const bool noisy = options.noise.has_value() && !options.noise->is_zero();
    const std::size_t runs = noisy ? std::max<std::size_t>(options.trajectories, 1) : 1;
    const StateVector initial(input);
    ProjectionPoint first{};
    ProjectionPoint second{};
    for (std::size_t t = 0; t < runs; ++t) {
        const StateVector out = run_circuit(genome, initial, options.noise, rng);
        const auto [a, b] = options.shots > 0 ? sampled_projection_points(out, options.shots, rng)
                                              : projection_points(out);
        if (runs == 1) {
            return {a, b};
        }
        first.x += a.x;
        first.y += a.y;
        second.x += b.x;
        second.y += b.y;
    }
    const auto n = static_cast<double>(runs);
    return {{first.x / n, first.y / n}, {second.x / n, second.y / n}};
}

} // namespace qusl
