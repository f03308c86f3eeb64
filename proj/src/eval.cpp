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
#include "qusl/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qusl/error.hpp"
#include "qusl/parallel.hpp"
#include "qusl/triplet.hpp"

namespace qusl {

namespace {

double l1(const ProjectionPoint &a, const ProjectionPoint &b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y); }

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

double similarity_score(const CircuitGenome &g, const ImagePatch &img1, const ImagePatch &img2,
                        SsimMatching matching, const SimOptions &sim, Rng &rng) {
    const auto [a1, p1] = run_projection(g, embed(interweave(img1, img2), g.qubits), sim, rng);
    const auto [a2, p2] = run_projection(g, embed(interweave(img2, img1), g.qubits), sim, rng);
    if (matching == SsimMatching::Role) {
        return l1(a1, a2) + l1(p1, p2);
    }
    return l1(a1, p2) + l1(p1, a2);
}

std::vector<double> average_ranks(std::span<const double> xs) {
    std::vector<std::size_t> order(xs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<double> ranks(xs.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) {
            ++j;
        }
        // positions i..j (0-based) share rank mean(i+1 .. j+1)
        const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            ranks[order[k]] = rank;
        }
        i = j + 1;
    }
    return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw ArgumentError("spearman: series lengths differ");
    }
    if (xs.size() < 2) {
        throw ArgumentError("spearman: need at least two observations");
    }
    const auto rx = average_ranks(xs);
    const auto ry = average_ranks(ys);
    const auto n = static_cast<double>(rx.size());
    const double mean = (n + 1.0) / 2.0; // mean rank is exact regardless of ties
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        const double dx = rx[i] - mean;
        const double dy = ry[i] - mean;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw ArgumentError("spearman: correlation undefined for a constant series");
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(std::size_t dataset_size, std::size_t n_pairs,
                                                              std::uint64_t seed) {
    if (dataset_size < 2) {
        throw ArgumentError("evaluation needs at least 2 patches");
    }
    Rng rng = derive_stream(seed, {tag(StreamTag::Pairs)});
    std::uniform_int_distribution<std::size_t> first(0, dataset_size - 1);
    std::uniform_int_distribution<std::size_t> other(0, dataset_size - 2);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n_pairs);
    for (std::size_t k = 0; k < n_pairs; ++k) {
        const std::size_t a = first(rng);
        std::size_t b = other(rng);
        if (b >= a) {
            ++b;
        }
        pairs.emplace_back(a, b);
    }
    return pairs;
}

SimilarityReport evaluate_pairs(const CircuitGenome &g, std::span<const ImagePatch> dataset,
                                std::span<const std::pair<std::size_t, std::size_t>> pairs,
                                const EvalOptions &options) {
    std::vector<ImagePatch> fitted;
    fitted.reserve(dataset.size());
    for (const auto &p : dataset) {
        fitted.push_back(fit_to_qubit_budget(p, g.qubits));
    }
    SimilarityReport report;
    report.options = options;
    report.pairs.resize(pairs.size());
    parallel_for(pairs.size(), options.jobs, [&](std::size_t k) {
        const auto [a, b] = pairs[k];
        Rng rng = derive_stream(options.seed, {tag(StreamTag::Evaluate), k});
        report.pairs[k] = {a, b, similarity_score(g, fitted.at(a), fitted.at(b), options.matching, options.sim, rng),
                           reference_distance(dataset[a], dataset[b], options.distance, options.histogram_bins)};
    });
    std::vector<double> s(pairs.size());
    std::vector<double> e(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        s[k] = report.pairs[k].s_sim;
        e[k] = report.pairs[k].ed;
    }
    try {
        report.rho = spearman(s, e);
    } catch (const ArgumentError &) {
        report.rho.reset();
    }
    return report;
}

SimilarityReport evaluate_model(const CircuitGenome &g, std::span<const ImagePatch> dataset, std::size_t n_pairs,
                                const EvalOptions &options) {
    if (n_pairs < 2) {
        throw ArgumentError("evaluation needs at least 2 pairs");
    }
    const auto pairs = sample_pairs(dataset.size(), n_pairs, options.seed);
    return evaluate_pairs(g, dataset, pairs, options);
}

CircuitGenome baseline_template(std::size_t qubits, std::size_t layers, Rng &rng) {
    if (qubits < 2 || layers < 1) {
        throw ArgumentError("baseline template needs qubits >= 2 and layers >= 1");
    }
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    CircuitGenome g{qubits, {}};
    for (std::size_t l = 0; l < layers; ++l) {
        for (std::size_t q = 0; q < qubits; ++q) {
            g.gates.push_back(Gate::rx(q, angle(rng)));
            g.gates.push_back(Gate::ry(q, angle(rng)));
            g.gates.push_back(Gate::rz(q, angle(rng)));
        }
        for (std::size_t q = 0; q + 1 < qubits; ++q) {
            g.gates.push_back(Gate::cnot(q, q + 1));
        }
    }
    return g;
}

nlohmann::json report_to_json(const SimilarityReport &report, const std::string &genome_file) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto &p : report.pairs) {
        pairs.push_back({{"a", p.a}, {"b", p.b}, {"s_sim", p.s_sim}, {"ed", p.ed}});
    }
    nlohmann::json j{
        {"genome_file", genome_file},
        {"n_pairs", report.pairs.size()},
        {"distance_mode", report.options.distance == DistanceMode::Histogram ? "hist" : "pixel"},
        {"matching", report.options.matching == SsimMatching::Role ? "role" : "identity"},
        {"seed", report.options.seed},
        {"rho", nullptr},
        {"correlation", report.rho ? "defined" : "undefined"},
        {"pairs", std::move(pairs)},
    };
    if (report.rho) {
        j["rho"] = *report.rho;
    }
    return j;
}

std::string scatter_csv(const SimilarityReport &report) {
    std::ostringstream out;
    out << "ed,s_sim\n";
    for (const auto &p : report.pairs) {
        out << fmt_double(p.ed) << ',' << fmt_double(p.s_sim) << '\n';
    }
    return out.str();
}

} // namespace qusl
