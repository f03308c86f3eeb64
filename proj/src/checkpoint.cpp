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
#include "qusl/checkpoint.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qusl/error.hpp"

namespace qusl {

namespace {

using nlohmann::json;

std::uint64_t fnv1a64(const std::string &s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Doubles travel as their IEEE bit patterns so every value, including the
// crowding sentinel and an unset infinite champion loss, survives exactly.
std::string bits(double v) {
    std::uint64_t u = 0;
    static_assert(sizeof u == sizeof v);
    std::memcpy(&u, &v, sizeof u);
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(u));
    return buf;
}

double unbits(const json &j) {
    const auto s = j.get<std::string>();
    if (s.size() != 16) {
        throw CheckpointError("bad double encoding");
    }
    const std::uint64_t u = std::stoull(s, nullptr, 16);
    double v = 0.0;
    std::memcpy(&v, &u, sizeof v);
    return v;
}

json record_to_json(const FitnessRecord &r) {
    return {bits(r.l_qm), bits(r.delta), bits(r.loss), bits(r.f_obj), r.depth, r.cnot, r.pareto_front,
            bits(r.crowding)};
}

FitnessRecord record_from_json(const json &j) {
    FitnessRecord r;
    r.l_qm = unbits(j.at(0));
    r.delta = unbits(j.at(1));
    r.loss = unbits(j.at(2));
    r.f_obj = unbits(j.at(3));
    r.depth = j.at(4).get<std::size_t>();
    r.cnot = j.at(5).get<std::size_t>();
    r.pareto_front = j.at(6).get<std::size_t>();
    r.crowding = unbits(j.at(7));
    return r;
}

json genome_bits(const CircuitGenome &g) {
    json gates = json::array();
    for (const auto &gate : g.gates) {
        gates.push_back({static_cast<int>(gate.kind), gate.target, gate.control, bits(gate.theta)});
    }
    return {{"qubits", g.qubits}, {"gates", gates}};
}

CircuitGenome genome_unbits(const json &j) {
    CircuitGenome g;
    g.qubits = j.at("qubits").get<std::size_t>();
    for (const auto &jg : j.at("gates")) {
        const int kind = jg.at(0).get<int>();
        if (kind < 0 || kind >= static_cast<int>(kAllGateKinds.size())) {
            throw CheckpointError("bad gate kind");
        }
        g.gates.push_back({kAllGateKinds[static_cast<std::size_t>(kind)], jg.at(1).get<std::size_t>(),
                           jg.at(2).get<std::size_t>(), unbits(jg.at(3))});
    }
    validate(g);
    return g;
}

json state_to_json(const EvolutionState &s) {
    json pop = json::array();
    for (const auto &g : s.population) {
        pop.push_back(genome_bits(g));
    }
    json val = json::array();
    for (const auto &v : s.validation) {
        val.push_back({v.anchor, v.seed});
    }
    json hist = json::array();
    for (const auto &log : s.history) {
        json recs = json::array();
        for (const auto &r : log.records) {
            recs.push_back(record_to_json(r));
        }
        json vl = json::array();
        for (double v : log.validation_losses) {
            vl.push_back(bits(v));
        }
        hist.push_back({{"generation", log.generation},
                        {"records", recs},
                        {"validation_losses", vl},
                        {"champion_validation_loss", bits(log.champion_validation_loss)}});
    }
    return {{"generation", s.generation},     {"population", pop},
            {"validation", val},              {"champion", genome_bits(s.champion)},
            {"champion_loss", bits(s.champion_loss)}, {"history", hist}};
}

EvolutionState state_from_json(const json &j) {
    EvolutionState s;
    s.generation = j.at("generation").get<std::size_t>();
    for (const auto &g : j.at("population")) {
        s.population.push_back(genome_unbits(g));
    }
    for (const auto &v : j.at("validation")) {
        s.validation.push_back({v.at(0).get<std::size_t>(), v.at(1).get<std::uint64_t>()});
    }
    s.champion = genome_unbits(j.at("champion"));
    s.champion_loss = unbits(j.at("champion_loss"));
    for (const auto &jl : j.at("history")) {
        GenerationLog log;
        log.generation = jl.at("generation").get<std::size_t>();
        for (const auto &r : jl.at("records")) {
            log.records.push_back(record_from_json(r));
        }
        for (const auto &v : jl.at("validation_losses")) {
            log.validation_losses.push_back(unbits(v));
        }
        log.champion_validation_loss = unbits(jl.at("champion_validation_loss"));
        s.history.push_back(std::move(log));
    }
    return s;
}

} // namespace

json problem_to_json(const EvolutionProblem &p) {
    json noise = nullptr;
    if (p.sim.noise) {
        noise = {bits(p.sim.noise->p_bitflip), bits(p.sim.noise->p_phaseflip), bits(p.sim.noise->p_depolarizing)};
    }
    const auto &v = p.variation;
    const auto &f = p.fitness;
    const auto &e = p.evolution;
    return {
        {"qubits", p.qubits},
        {"sigma", bits(p.perturbation.sigma)},
        {"orientation", p.orientation == PairOrientation::NegativeFirst ? "negative_first" : "anchor_first"},
        {"noise", noise},
        {"trajectories", p.sim.trajectories},
        {"shots", p.sim.shots},
        {"fitness",
         {bits(f.alpha), bits(f.beta), f.batch_size, f.validation_size, bits(f.epsilon_guard), bits(f.f_cap)}},
        {"variation",
         {bits(v.p_add), bits(v.p_remove), bits(v.p_kind_change), bits(v.p_rewire), bits(v.p_angle_jitter),
          bits(v.angle_jitter_sigma), v.min_init_gates, v.max_init_gates, v.max_gates}},
        {"evolution",
         {e.population, e.generations, e.tournament_size, bits(e.redundancy_threshold), e.elitism, e.seed}},
    };
}

EvolutionProblem problem_from_json(const json &j) {
    EvolutionProblem p;
    p.qubits = j.at("qubits").get<std::size_t>();
    p.perturbation.sigma = unbits(j.at("sigma"));
    p.orientation = j.at("orientation").get<std::string>() == "negative_first" ? PairOrientation::NegativeFirst
                                                                                : PairOrientation::AnchorFirst;
    if (!j.at("noise").is_null()) {
        const auto &n = j.at("noise");
        p.sim.noise = NoiseConfig{unbits(n.at(0)), unbits(n.at(1)), unbits(n.at(2))};
    }
    p.sim.trajectories = j.at("trajectories").get<std::size_t>();
    p.sim.shots = j.at("shots").get<std::size_t>();
    const auto &f = j.at("fitness");
    p.fitness = {unbits(f.at(0)),
                 unbits(f.at(1)),
                 f.at(2).get<std::size_t>(),
                 f.at(3).get<std::size_t>(),
                 unbits(f.at(4)),
                 unbits(f.at(5))};
    const auto &v = j.at("variation");
    p.variation = {unbits(v.at(0)),
                   unbits(v.at(1)),
                   unbits(v.at(2)),
                   unbits(v.at(3)),
                   unbits(v.at(4)),
                   unbits(v.at(5)),
                   v.at(6).get<std::size_t>(),
                   v.at(7).get<std::size_t>(),
                   v.at(8).get<std::size_t>()};
    const auto &e = j.at("evolution");
    p.evolution.population = e.at(0).get<std::size_t>();
    p.evolution.generations = e.at(1).get<std::size_t>();
    p.evolution.tournament_size = e.at(2).get<std::size_t>();
    p.evolution.redundancy_threshold = unbits(e.at(3));
    p.evolution.elitism = e.at(4).get<std::size_t>();
    p.evolution.seed = e.at(5).get<std::uint64_t>();
    return p;
}

bool same_problem(const EvolutionProblem &a, const EvolutionProblem &b) {
    return problem_to_json(a) == problem_to_json(b);
}

std::string encode_checkpoint(const Checkpoint &ckpt) {
    const json payload{{"problem", problem_to_json(ckpt.problem)}, {"state", state_to_json(ckpt.state)}};
    const std::string body = payload.dump();
    char header[96];
    std::snprintf(header, sizeof header, "QUSLCKPT %d %zu %016llx\n", kCheckpointVersion, body.size(),
                  static_cast<unsigned long long>(fnv1a64(body)));
    return header + body;
}

Checkpoint decode_checkpoint(const std::string &bytes) {
    const auto nl = bytes.find('\n');
    if (nl == std::string::npos) {
        throw CheckpointError("checkpoint header missing");
    }
    std::istringstream header(bytes.substr(0, nl));
    std::string magic;
    int version = 0;
    std::size_t length = 0;
    std::string digest;
    if (!(header >> magic >> version >> length >> digest) || magic != "QUSLCKPT") {
        throw CheckpointError("not a checkpoint file");
    }
    if (version != kCheckpointVersion) {
        throw CheckpointError("checkpoint version " + std::to_string(version) + " is not supported (expected " +
                              std::to_string(kCheckpointVersion) + ")");
    }
    const std::string body = bytes.substr(nl + 1);
    if (body.size() != length) {
        throw CheckpointError("checkpoint truncated: expected " + std::to_string(length) + " payload bytes, found " +
                              std::to_string(body.size()));
    }
    char expect[20];
    std::snprintf(expect, sizeof expect, "%016llx", static_cast<unsigned long long>(fnv1a64(body)));
    if (digest != expect) {
        throw CheckpointError("checkpoint checksum mismatch");
    }
    try {
        const json payload = json::parse(body);
        return {problem_from_json(payload.at("problem")), state_from_json(payload.at("state"))};
    } catch (const json::exception &e) {
        throw CheckpointError(std::string("corrupt checkpoint payload: ") + e.what());
    } catch (const CheckpointError &) {
        throw;
    } catch (const Error &e) {
        throw CheckpointError(std::string("invalid checkpoint contents: ") + e.what());
    }
}

void checkpoint_save(const std::filesystem::path &path, const Checkpoint &ckpt) {
    const std::string bytes = encode_checkpoint(ckpt);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot write " + tmp.string());
        }
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) {
            throw IoError("write failure on " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

Checkpoint checkpoint_load(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CheckpointError("cannot open checkpoint " + path.string());
    }
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_checkpoint(bytes);
}

} // namespace qusl
