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
#include "qusl/triplet.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "qusl/error.hpp"

namespace qusl {

ImagePatch perturb(const ImagePatch &anchor, const PerturbationConfig &cfg, Rng &rng) {
    if (!(cfg.sigma >= 0.0)) {
        throw ArgumentError("sigma must be >= 0");
    }
    if (cfg.sigma == 0.0) {
        return anchor;
    }
    std::normal_distribution<double> noise(0.0, cfg.sigma);
    std::vector<double> data(anchor.flat().begin(), anchor.flat().end());
    for (double &v : data) {
        v = std::clamp(v + noise(rng), 0.0, 255.0);
    }
    return {anchor.width(), anchor.height(), std::move(data)};
}

Triplet build_triplet(std::span<const ImagePatch> dataset, std::size_t anchor_idx,
                      const PerturbationConfig &cfg, Rng &rng) {
    if (dataset.empty()) {
        throw ArgumentError("cannot build a triplet from an empty dataset");
    }
    if (anchor_idx >= dataset.size()) {
        throw IndexError("anchor index " + std::to_string(anchor_idx) + " out of range");
    }
    if (dataset.size() < 2) {
        throw ArgumentError("dataset of size 1 has no distinct negative");
    }
    const ImagePatch &anchor = dataset[anchor_idx];
    ImagePatch positive = perturb(anchor, cfg, rng);
    // Draw from the n-1 other indices and skip over the anchor.
    std::uniform_int_distribution<std::size_t> pick(0, dataset.size() - 2);
    std::size_t neg = pick(rng);
    if (neg >= anchor_idx) {
        ++neg;
    }
    return {anchor, std::move(positive), dataset[neg]};
}

std::vector<double> interweave(const ImagePatch &first, const ImagePatch &second) {
    if (!first.same_shape(second)) {
        throw DimensionError("interweave needs patches of identical shape");
    }
    const auto a = first.flat();
    const auto b = second.flat();
    std::vector<double> out(2 * a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        out[2 * k] = a[k];
        out[2 * k + 1] = b[k];
    }
    return out;
}

EmbeddingVector embed(std::span<const double> raw, std::size_t qubits) {
    if (qubits >= 8 * sizeof(std::size_t)) {
        throw CapacityError("qubit count too large");
    }
    const std::size_t dim = std::size_t{1} << qubits;
    if (raw.size() > dim) {
        throw CapacityError("payload of " + std::to_string(raw.size()) + " values exceeds 2^" +
                            std::to_string(qubits) + " amplitudes");
    }
    double sum = 0.0;
    for (double v : raw) {
        sum += v * v;
    }
    if (!(sum > 0.0) || !std::isfinite(sum)) {
        throw NormalizationError("cannot normalize an all-zero payload");
    }
    const double inv = 1.0 / std::sqrt(sum);
    EmbeddingVector e{std::vector<double>(dim, 0.0), qubits, raw.size()};
    for (std::size_t i = 0; i < raw.size(); ++i) {
        e.amplitudes[i] = raw[i] * inv;
    }
    return e;
}

std::size_t max_square_side(std::size_t qubits) {
    const std::size_t cap = std::size_t{1} << qubits;
    std::size_t m = 0;
    while (pair_payload(m + 1, m + 1) <= cap) {
        ++m;
    }
    return m;
}

ImagePatch fit_to_qubit_budget(const ImagePatch &patch, std::size_t qubits) {
    if (qubits < 2) {
        throw ArgumentError("qubit budget must be >= 2");
    }
    if (pair_payload(patch.width(), patch.height()) <= (std::size_t{1} << qubits)) {
        return patch;
    }
    const std::size_t side = max_square_side(qubits);
    return resize(patch, side, side);
}

} // namespace qusl
