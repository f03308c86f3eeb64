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
#include "qusl/evolution.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <tuple>

#include "qusl/error.hpp"
#include "qusl/parallel.hpp"

namespace qusl {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Objective vector, all minimized.
std::array<double, 3> objectives(const FitnessRecord &r) {
    return {r.loss, static_cast<double>(r.depth), static_cast<double>(r.cnot)};
}

void assign_crowding(std::vector<FitnessRecord> &records, const std::vector<std::size_t> &front) {
    for (auto i : front) {
        records[i].crowding = 0.0;
    }
    if (front.size() <= 2) {
        for (auto i : front) {
            records[i].crowding = kCrowdingBoundary;
        }
        return;
    }
    std::vector<std::size_t> order = front;
    for (std::size_t m = 0; m < 3; ++m) {
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return objectives(records[a])[m] < objectives(records[b])[m];
        });
        const double lo = objectives(records[order.front()])[m];
        const double hi = objectives(records[order.back()])[m];
        records[order.front()].crowding = kCrowdingBoundary;
        records[order.back()].crowding = kCrowdingBoundary;
        if (hi <= lo) {
            continue;
        }
        for (std::size_t k = 1; k + 1 < order.size(); ++k) {
            auto &c = records[order[k]].crowding;
            if (c == kCrowdingBoundary) {
                continue;
            }
            c += (objectives(records[order[k + 1]])[m] - objectives(records[order[k - 1]])[m]) / (hi - lo);
        }
    }
}

} // namespace

void validate(const FitnessConfig &cfg) {
    if (!(cfg.alpha > 0.0) || !(cfg.beta > 0.0)) {
        throw ArgumentError("alpha and beta must be positive");
    }
    if (!(cfg.epsilon_guard > 0.0) || !(cfg.f_cap > 0.0)) {
        throw ArgumentError("epsilon_guard and f_cap must be positive");
    }
    if (cfg.batch_size < 1 || cfg.validation_size < 1) {
        throw ArgumentError("batch sizes must be >= 1");
    }
}

void validate(const EvolutionConfig &cfg) {
    if (cfg.population < 2) {
        throw ArgumentError("population must be >= 2");
    }
    if (cfg.tournament_size < 2 || cfg.tournament_size > cfg.population) {
        throw ArgumentError("tournament_size must lie in [2, population]");
    }
    if (cfg.elitism >= cfg.population) {
        throw ArgumentError("elitism must be smaller than the population");
    }
    if (!(cfg.redundancy_threshold >= 0.0 && cfg.redundancy_threshold <= 1.0)) {
        throw ArgumentError("redundancy_threshold must lie in [0,1]");
    }
}

TripletProjections pair_projections(const CircuitGenome &g, const Triplet &t, PairOrientation orientation,
                                    const SimOptions &sim, Rng &rng) {
    if (g.qubits < 4) {
        throw CapacityError("projection readout needs at least 4 qubits");
    }
    TripletProjections p;
    const auto first = embed(interweave(t.anchor, t.positive), g.qubits);
    std::tie(p.anchor_p, p.positive) = run_projection(g, first, sim, rng);
    if (orientation == PairOrientation::NegativeFirst) {
        const auto second = embed(interweave(t.negative, t.anchor), g.qubits);
        std::tie(p.negative, p.anchor_n) = run_projection(g, second, sim, rng);
    } else {
        const auto second = embed(interweave(t.anchor, t.negative), g.qubits);
        std::tie(p.anchor_n, p.negative) = run_projection(g, second, sim, rng);
    }
    return p;
}

TripletLoss triplet_loss(const TripletProjections &p) {
    const double ap = std::abs(p.anchor_p.x - p.positive.x) + std::abs(p.anchor_p.y - p.positive.y);
    const double an = std::abs(p.negative.x - p.anchor_n.x) + std::abs(p.negative.y - p.anchor_n.y);
    const double delta = std::abs(p.anchor_p.x - p.anchor_n.x) + std::abs(p.anchor_p.y - p.anchor_n.y);
    return {ap - an, delta};
}

double guarded_fitness(double loss, const FitnessConfig &cfg) {
    if (std::abs(loss) >= cfg.epsilon_guard) {
        return std::clamp(1.0 / loss, -cfg.f_cap, cfg.f_cap);
    }
    return loss < 0.0 ? -cfg.f_cap : cfg.f_cap;
}

FitnessRecord batch_fitness(const CircuitGenome &g, std::span<const Triplet> batch, const FitnessConfig &cfg,
                            PairOrientation orientation, const SimOptions &sim, Rng &rng) {
    if (batch.empty()) {
        throw ArgumentError("fitness batch is empty");
    }
    double l_qm = 0.0;
    double delta = 0.0;
    double loss = 0.0;
    for (const auto &t : batch) {
        const auto tl = triplet_loss(pair_projections(g, t, orientation, sim, rng));
        l_qm += tl.l_qm;
        delta += tl.delta;
        loss += cfg.alpha * tl.l_qm + cfg.beta * tl.delta;
    }
    const auto n = static_cast<double>(batch.size());
    FitnessRecord r;
    r.l_qm = l_qm / n;
    r.delta = delta / n;
    r.loss = loss / n;
    r.f_obj = guarded_fitness(r.loss, cfg);
    r.depth = depth(g);
    r.cnot = cnot_count(g);
    return r;
}

bool dominates(const FitnessRecord &a, const FitnessRecord &b) {
    const auto oa = objectives(a);
    const auto ob = objectives(b);
    bool strictly = false;
    for (std::size_t m = 0; m < oa.size(); ++m) {
        if (oa[m] > ob[m]) {
            return false;
        }
        strictly = strictly || oa[m] < ob[m];
    }
    return strictly;
}

void non_dominated_sort(std::vector<FitnessRecord> &records) {
    const std::size_t n = records.size();
    std::vector<std::vector<std::size_t>> dominated_by_me(n);
    std::vector<std::size_t> domination_count(n, 0);
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                continue;
            }
            if (dominates(records[i], records[j])) {
                dominated_by_me[i].push_back(j);
            } else if (dominates(records[j], records[i])) {
                ++domination_count[i];
            }
        }
        if (domination_count[i] == 0) {
            current.push_back(i);
        }
    }
    std::size_t front = 0;
    while (!current.empty()) {
        for (auto i : current) {
            records[i].pareto_front = front;
        }
        assign_crowding(records, current);
        std::vector<std::size_t> next;
        for (auto i : current) {
            for (auto j : dominated_by_me[i]) {
                if (--domination_count[j] == 0) {
                    next.push_back(j);
                }
            }
        }
        std::sort(next.begin(), next.end());
        current = std::move(next);
        ++front;
    }
}

bool better_ranked(const FitnessRecord &a, std::size_t ia, const FitnessRecord &b, std::size_t ib) {
    if (a.pareto_front != b.pareto_front) {
        return a.pareto_front < b.pareto_front;
    }
    if (a.crowding != b.crowding) {
        return a.crowding > b.crowding;
    }
    if (a.loss != b.loss) {
        return a.loss < b.loss;
    }
    return ia < ib;
}

std::size_t tournament_select(std::span<const CircuitGenome> population, std::span<const FitnessRecord> records,
                              const EvolutionConfig &cfg, Rng &rng) {
    if (population.empty() || population.size() != records.size()) {
        throw ArgumentError("tournament needs a non-empty population with aligned records");
    }
    const std::size_t k = std::min(cfg.tournament_size, population.size());
    // Partial Fisher-Yates draw of k distinct contestants.
    std::vector<std::size_t> pool(population.size());
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    std::vector<std::size_t> contestants(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<bool> alive(k, true);
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            if (!alive[a] || !alive[b]) {
                continue;
            }
            const std::size_t ia = contestants[a];
            const std::size_t ib = contestants[b];
            if (structural_distance(population[ia], population[ib]) < cfg.redundancy_threshold) {
                if (better_ranked(records[ia], ia, records[ib], ib)) {
                    alive[b] = false;
                } else {
                    alive[a] = false;
                }
            }
        }
    }
    std::size_t winner = population.size();
    for (std::size_t a = 0; a < k; ++a) {
        if (!alive[a]) {
            continue;
        }
        const std::size_t i = contestants[a];
        if (winner == population.size() || better_ranked(records[i], i, records[winner], winner)) {
            winner = i;
        }
    }
    return winner;
}

Triplet materialize(std::span<const ImagePatch> dataset, const TripletSpec &spec, const PerturbationConfig &cfg) {
    Rng rng{spec.seed};
    return build_triplet(dataset, spec.anchor, cfg, rng);
}

Evolver::Evolver(std::vector<ImagePatch> dataset, EvolutionProblem problem)
    : dataset_(std::move(dataset)), problem_(std::move(problem)) {
    validate(problem_.fitness);
    validate(problem_.variation);
    validate(problem_.evolution);
    if (problem_.sim.noise) {
        validate(*problem_.sim.noise);
    }
    if (problem_.qubits < 4) {
        throw ArgumentError("the search needs at least 4 qubits for projection readout");
    }
    if (dataset_.size() < 2) {
        throw ArgumentError("dataset needs at least 2 patches to form triplets");
    }
    for (auto &p : dataset_) {
        p = fit_to_qubit_budget(p, problem_.qubits);
        if (!p.same_shape(dataset_.front())) {
            throw DimensionError("dataset patches must share one shape");
        }
    }
}

std::vector<TripletSpec> Evolver::sample_batch(std::uint64_t tag_value, std::size_t generation,
                                               std::size_t count) const {
    std::vector<TripletSpec> specs;
    specs.reserve(count);
    std::uniform_int_distribution<std::size_t> anchor(0, dataset_.size() - 1);
    for (std::size_t k = 0; k < count; ++k) {
        Rng rng = derive_stream(problem_.evolution.seed, {tag_value, generation, k});
        const std::size_t a = anchor(rng);
        specs.push_back({a, rng()});
    }
    return specs;
}

std::vector<Triplet> Evolver::materialize_batch(std::span<const TripletSpec> specs) const {
    std::vector<Triplet> out;
    out.reserve(specs.size());
    for (const auto &s : specs) {
        out.push_back(materialize(dataset_, s, problem_.perturbation));
    }
    return out;
}

EvolutionState Evolver::initial_state() const {
    EvolutionState state;
    const auto &evo = problem_.evolution;
    state.population.reserve(evo.population);
    for (std::size_t i = 0; i < evo.population; ++i) {
        Rng rng = derive_stream(evo.seed, {tag(StreamTag::Init), i});
        state.population.push_back(random_genome(problem_.qubits, problem_.variation, rng));
    }
    state.validation = sample_batch(tag(StreamTag::Validation), 0, problem_.fitness.validation_size);
    state.champion = CircuitGenome{problem_.qubits, {}};
    return state;
}

void Evolver::step(EvolutionState &state) const {
    if (finished(state)) {
        return;
    }
    const auto &evo = problem_.evolution;
    const std::size_t gen = state.generation;
    const std::size_t n = state.population.size();
    const auto batch = materialize_batch(sample_batch(tag(StreamTag::Batch), gen, problem_.fitness.batch_size));
    const auto validation = materialize_batch(state.validation);

    GenerationLog log;
    log.generation = gen;
    log.records.resize(n);
    log.validation_losses.resize(n);
    parallel_for(n, evo.jobs, [&](std::size_t i) {
        Rng rng = derive_stream(evo.seed, {tag(StreamTag::Evaluate), gen, i});
        log.records[i] = batch_fitness(state.population[i], batch, problem_.fitness, problem_.orientation,
                                       problem_.sim, rng);
        Rng vrng = derive_stream(evo.seed, {tag(StreamTag::ValidationEval), gen, i});
        log.validation_losses[i] = batch_fitness(state.population[i], validation, problem_.fitness,
                                                 problem_.orientation, problem_.sim, vrng)
                                       .loss;
    });
    non_dominated_sort(log.records);

    for (std::size_t i = 0; i < n; ++i) {
        if (log.validation_losses[i] < state.champion_loss) {
            state.champion_loss = log.validation_losses[i];
            state.champion = state.population[i];
        }
    }
    log.champion_validation_loss = state.champion_loss;
    state.history.push_back(log);

    if (gen < evo.generations) {
        std::vector<std::size_t> ranked(n);
        std::iota(ranked.begin(), ranked.end(), 0);
        std::sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t b) {
            return better_ranked(log.records[a], a, log.records[b], b);
        });
        std::vector<CircuitGenome> next;
        next.reserve(evo.population);
        for (std::size_t e = 0; e < evo.elitism && e < n; ++e) {
            next.push_back(state.population[ranked[e]]);
        }
        Rng rng = derive_stream(evo.seed, {tag(StreamTag::Variation), gen});
        while (next.size() < evo.population) {
            const std::size_t pa = tournament_select(state.population, log.records, evo, rng);
            const std::size_t pb = tournament_select(state.population, log.records, evo, rng);
            auto children =
                crossover(state.population[pa], state.population[pb], problem_.variation.max_gates, rng);
            next.push_back(mutate(children.first, problem_.variation, rng));
            if (next.size() < evo.population) {
                next.push_back(mutate(children.second, problem_.variation, rng));
            }
        }
        state.population = std::move(next);
    }
    state.generation = gen + 1;
}

void Evolver::run(EvolutionState &state, const std::function<void(const EvolutionState &)> &on_generation) const {
    while (!finished(state)) {
        step(state);
        if (on_generation) {
            on_generation(state);
        }
    }
}

EvolutionResult evolve(std::vector<ImagePatch> dataset, const EvolutionProblem &problem) {
    const Evolver evolver(std::move(dataset), problem);
    EvolutionState state = evolver.initial_state();
    evolver.run(state);
    return {state.champion, std::move(state)};
}

std::string history_csv(const std::vector<GenerationLog> &history) {
    std::ostringstream out;
    out << "generation,individual,loss,f_obj,l_qm_mean,delta_mean,depth,cnot,front,crowding\n";
    for (const auto &log : history) {
        for (std::size_t i = 0; i < log.records.size(); ++i) {
            const auto &r = log.records[i];
            out << log.generation << ',' << i << ',' << fmt_double(r.loss) << ',' << fmt_double(r.f_obj) << ','
                << fmt_double(r.l_qm) << ',' << fmt_double(r.delta) << ',' << r.depth << ',' << r.cnot << ','
                << r.pareto_front << ',' << fmt_double(r.crowding) << '\n';
        }
    }
    return out.str();
}

std::string archive_csv(const std::vector<GenerationLog> &history) {
    std::ostringstream out;
    out << "generation,champion_validation_loss\n";
    for (const auto &log : history) {
        out << log.generation << ',' << fmt_double(log.champion_validation_loss) << '\n';
    }
    return out.str();
}

} // namespace qusl
