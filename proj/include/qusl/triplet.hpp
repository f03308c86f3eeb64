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
 * Anchor/positive/negative triplet construction, feature interweaving and
 * amplitude embedding.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qusl/image.hpp"
#include "qusl/rng.hpp"

namespace qusl {

/// Gaussian perturbation of the anchor; sigma is in intensity units.
struct PerturbationConfig {
    double sigma = 5.0;
    std::uint64_t rng_seed = 0;
};

struct Triplet {
    ImagePatch anchor;
    ImagePatch positive;
    ImagePatch negative;
};

/// Unit-norm real amplitudes of length 2^qubits; entries past payload_len are zero.
struct EmbeddingVector {
    std::vector<double> amplitudes;
    std::size_t qubits = 0;
    std::size_t payload_len = 0;
};

/**
 * Order in which the (anchor, negative) pair is interleaved. With
 * NegativeFirst the negative occupies even positions, so its readout comes
 * from qubits (0,1) and the anchor's from (2,3).
 */
enum class PairOrientation { NegativeFirst, AnchorFirst };

constexpr std::size_t kDefaultQubits = 14;

/// Adds N(0, sigma^2) to every intensity independently, clamping to [0,255].
ImagePatch perturb(const ImagePatch &anchor, const PerturbationConfig &cfg, Rng &rng);

/// Anchor from the dataset, positive = perturb(anchor), negative uniform over the other indices.
Triplet build_triplet(std::span<const ImagePatch> dataset, std::size_t anchor_idx,
                      const PerturbationConfig &cfg, Rng &rng);

/// Element-wise alternation of the two channel-major flats: out[2k] = first[k], out[2k+1] = second[k].
std::vector<double> interweave(const ImagePatch &first, const ImagePatch &second);

/// Zero-pads raw to 2^qubits and divides by its L2 norm.
EmbeddingVector embed(std::span<const double> raw, std::size_t qubits);

/// Number of amplitudes an interleaved pair of the patch needs (6 * w * h).
constexpr std::size_t pair_payload(std::size_t width, std::size_t height) noexcept {
    return 2 * kChannels * width * height;
}

/// Downsamples to the largest square side M with 6 M^2 <= 2^qubits when the pair does not fit.
ImagePatch fit_to_qubit_budget(const ImagePatch &patch, std::size_t qubits);

/// Largest M with 6 M^2 <= 2^qubits.
std::size_t max_square_side(std::size_t qubits);

} // namespace qusl
