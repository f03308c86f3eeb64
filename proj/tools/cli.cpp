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
#include "cli.hpp"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qusl/checkpoint.hpp"
#include "qusl/circuit.hpp"
#include "qusl/config.hpp"
#include "qusl/dataset.hpp"
#include "qusl/error.hpp"
#include "qusl/eval.hpp"
#include "qusl/evolution.hpp"
#include "qusl/genome.hpp"
#include "qusl/image.hpp"
#include "qusl/qasm.hpp"

namespace qusl::cli {

namespace {

namespace fs = std::filesystem;

/// Failure attributable to the invocation (bad flags, inputs or run directory).
struct UsageError : Error {
    using Error::Error;
};

std::string read_text(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const fs::path &path, const std::string &text) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot write " + tmp.string());
        }
        out << text;
        if (!out.flush()) {
            throw IoError("write failed: " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fnv1a64_hex(const std::string &bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

CircuitGenome load_genome(const fs::path &path) {
    if (!fs::is_regular_file(path)) {
        throw UsageError("genome file not found: " + path.string());
    }
    const std::string text = read_text(path);
    if (path.extension() == ".qasm") {
        return parse_qasm_subset(text);
    }
    return genome_from_json_text(text);
}

RunConfig load_config(const std::string &path, const std::vector<std::string> &overrides) {
    RunConfig cfg = path.empty() ? RunConfig{} : parse_config(read_text(path));
    for (const auto &kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw UsageError("--set expects section.key=value, got '" + kv + "'");
        }
        set_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    validate(cfg);
    return cfg;
}

/// Creates dir, refusing to reuse a non-empty one unless force is set.
void prepare_output_dir(const fs::path &dir, bool force) {
    if (fs::exists(dir)) {
        if (!fs::is_directory(dir)) {
            throw UsageError(dir.string() + " exists and is not a directory");
        }
        if (!fs::is_empty(dir)) {
            if (!force) {
                throw UsageError(dir.string() + " already exists; pass --force to replace it");
            }
            fs::remove_all(dir);
        }
    }
    fs::create_directories(dir);
}

// ---------------------------------------------------------------- ingest

struct IngestArgs {
    std::string format;
    std::string input;
    std::size_t patch_size = kCifarSide;
    std::string out;
};

int cmd_ingest(const IngestArgs &a, std::ostream &out) {
    std::vector<ImagePatch> patches;
    if (a.format == "cifar10") {
        for (auto &p : load_cifar_binary(a.input)) {
            patches.push_back(resize(p, a.patch_size, a.patch_size));
        }
    } else {
        patches = load_ppm_dir(a.input, a.patch_size, a.patch_size);
    }
    if (patches.empty()) {
        throw UsageError("no input images");
    }
    write_dataset_cache(a.out, patches);
    out << "wrote " << patches.size() << " patches of " << a.patch_size << "x" << a.patch_size << "x3 to " << a.out
        << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- synth

struct SynthArgs {
    std::size_t count = 64;
    std::size_t side = 13;
    std::uint64_t seed = 1;
    std::string out;
};

int cmd_synth(const SynthArgs &a, std::ostream &out) {
    write_dataset_cache(a.out, make_synthetic_dataset(a.count, a.side, a.seed));
    out << "wrote " << a.count << " synthetic patches of " << a.side << "x" << a.side << "x3 to " << a.out << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- evolve

struct EvolveArgs {
    std::string dataset;
    std::string config;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::size_t jobs = 1;
    bool resume = false;
    bool force = false;
    std::optional<std::size_t> stop_after;
    bool quiet = false;
};

void write_run_outputs(const fs::path &dir, const EvolutionState &state) {
    write_text(dir / "history.csv", history_csv(state.history));
    write_text(dir / "archive.csv", archive_csv(state.history));
}

int cmd_evolve(const EvolveArgs &a, std::ostream &out) {
    const fs::path dir = a.out;
    const fs::path ckpt_path = dir / "checkpoints" / "latest.ckpt";
    RunConfig cfg;
    std::string dataset_path = a.dataset;

    if (a.resume) {
        if (!fs::is_regular_file(ckpt_path)) {
            throw UsageError("nothing to resume: " + ckpt_path.string() + " not found");
        }
        cfg = parse_config(read_text(dir / "config.ini"));
        if (!a.config.empty() || !a.overrides.empty() || a.seed) {
            RunConfig requested = load_config(a.config, a.overrides);
            if (a.seed) {
                requested.problem.evolution.seed = *a.seed;
            }
            if (render_config(requested) != render_config(cfg)) {
                throw UsageError("configuration differs from the run being resumed");
            }
        }
        const auto manifest = nlohmann::json::parse(read_text(dir / "run.json"));
        if (dataset_path.empty()) {
            dataset_path = manifest.at("dataset").get<std::string>();
        }
        if (fnv1a64_hex(read_text(dataset_path)) != manifest.at("dataset_fnv1a64").get<std::string>()) {
            throw UsageError("dataset " + dataset_path + " differs from the one the run started with");
        }
    } else {
        if (dataset_path.empty()) {
            throw UsageError("--dataset is required");
        }
        cfg = load_config(a.config, a.overrides);
        if (a.seed) {
            cfg.problem.evolution.seed = *a.seed;
        }
    }

    auto dataset = read_dataset_cache(dataset_path);
    EvolutionProblem problem = cfg.resolved_problem();
    problem.evolution.jobs = a.jobs;
    const Evolver evolver(std::move(dataset), problem);

    EvolutionState state;
    if (a.resume) {
        Checkpoint ckpt = checkpoint_load(ckpt_path);
        if (!same_problem(ckpt.problem, problem)) {
            throw UsageError("checkpoint was written for a different configuration");
        }
        state = std::move(ckpt.state);
    } else {
        prepare_output_dir(dir, a.force);
        fs::create_directories(dir / "checkpoints");
        write_text(dir / "config.ini", render_config(cfg));
        const nlohmann::json manifest{{"dataset", fs::absolute(dataset_path).string()},
                                      {"dataset_fnv1a64", fnv1a64_hex(read_text(dataset_path))}};
        write_text(dir / "run.json", manifest.dump(2) + "\n");
        state = evolver.initial_state();
    }

    std::size_t done = 0;
    while (!evolver.finished(state)) {
        if (a.stop_after && done == *a.stop_after) {
            out << "stopped before generation " << state.generation << "; continue with --resume\n";
            return kExitOk;
        }
        evolver.step(state);
        ++done;
        checkpoint_save(ckpt_path, Checkpoint{problem, state});
        write_run_outputs(dir, state);
        if (!a.quiet) {
            out << "generation " << state.history.back().generation << ": champion validation loss "
                << fmt_double(state.champion_loss) << "\n";
        }
    }

    write_run_outputs(dir, state);
    write_text(dir / "best.genome.json", genome_to_json_text(state.champion));
    write_text(dir / "best.qasm", export_qasm(state.champion));
    std::ostringstream summary;
    summary << "final validation loss " << fmt_double(state.champion_loss) << ", depth " << depth(state.champion)
            << ", cnot " << cnot_count(state.champion) << ", gates " << state.champion.gates.size() << "\n";
    write_text(dir / "summary.txt", summary.str());
    out << summary.str();
    return kExitOk;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs {
    std::string genome;
    std::string dataset;
    std::string config;
    std::vector<std::string> overrides;
    std::optional<std::size_t> pairs;
    std::optional<std::uint64_t> seed;
    std::string distance;
    std::string matching;
    std::string out;
    std::size_t jobs = 1;
    bool force = false;
};

int cmd_evaluate(const EvaluateArgs &a, std::ostream &out) {
    const CircuitGenome genome = load_genome(a.genome);
    RunConfig cfg = load_config(a.config, a.overrides);
    if (a.pairs) {
        set_config_value(cfg, "eval.n_pairs", std::to_string(*a.pairs));
    }
    if (a.seed) {
        cfg.eval_seed = *a.seed;
    }
    if (!a.distance.empty()) {
        set_config_value(cfg, "eval.distance", a.distance);
    }
    if (!a.matching.empty()) {
        set_config_value(cfg, "eval.ssim_matching", a.matching);
    }
    validate(cfg);
    const auto dataset = read_dataset_cache(a.dataset);
    EvalOptions options = cfg.eval_options();
    options.jobs = a.jobs;

    const SimilarityReport report = evaluate_model(genome, dataset, cfg.n_pairs, options);

    const fs::path dir = a.out;
    prepare_output_dir(dir, a.force);
    write_text(dir / "report.json", report_to_json(report, a.genome).dump(2) + "\n");
    write_text(dir / "scatter.csv", scatter_csv(report));
    write_text(dir / "config.ini", render_config(cfg));
    out << "rho " << (report.rho ? fmt_double(*report.rho) : std::string("undefined")) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- export-qasm / baseline

int cmd_export_qasm(const std::string &genome_path, const std::string &out_path, std::ostream &out) {
    const std::string qasm = export_qasm(load_genome(genome_path));
    if (out_path.empty()) {
        out << qasm;
    } else {
        write_text(out_path, qasm);
    }
    return kExitOk;
}

struct BaselineArgs {
    std::size_t qubits = 14;
    std::size_t layers = kDefaultBaselineLayers;
    std::uint64_t seed = 1;
    std::string out;
};

int cmd_baseline(const BaselineArgs &a, std::ostream &out) {
    if (a.qubits < 2 || a.layers < 1) {
        throw UsageError("baseline needs --qubits >= 2 and --layers >= 1");
    }
    Rng rng(a.seed);
    const CircuitGenome g = baseline_template(a.qubits, a.layers, rng);
    const std::string text =
        fs::path(a.out).extension() == ".qasm" || a.out.empty() ? export_qasm(g) : genome_to_json_text(g);
    if (a.out.empty()) {
        out << text;
    } else {
        write_text(a.out, text);
        out << "baseline: " << a.qubits << " qubits, " << a.layers << " layers, depth " << depth(g) << ", cnot "
            << cnot_count(g) << "\n";
    }
    return kExitOk;
}

int cmd_config(const std::string &path, const std::vector<std::string> &overrides, std::ostream &out) {
    out << render_config(load_config(path, overrides));
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Evolutionary quantum circuit search for unsupervised image similarity", "qusl"};
    app.require_subcommand(1);

    IngestArgs ingest;
    auto *c_ingest = app.add_subcommand("ingest", "Convert CIFAR-10 batches or a PPM directory to a dataset cache");
    c_ingest->add_option("--format", ingest.format, "Input format")
        ->required()
        ->check(CLI::IsMember({"cifar10", "ppm"}));
    c_ingest->add_option("--input", ingest.input, "CIFAR-10 batch file or PPM directory")->required();
    c_ingest->add_option("--patch-size", ingest.patch_size, "Side of the square output patches")
        ->check(CLI::Range(1, 4096));
    c_ingest->add_option("--out", ingest.out, "Dataset cache to write")->required();

    SynthArgs synth;
    auto *c_synth = app.add_subcommand("synth", "Write a synthetic structured dataset cache");
    c_synth->add_option("--count", synth.count, "Number of patches")->check(CLI::Range(1, 1000000));
    c_synth->add_option("--side", synth.side, "Patch side length")->check(CLI::Range(1, 4096));
    c_synth->add_option("--seed", synth.seed, "Generator seed");
    c_synth->add_option("--out", synth.out, "Dataset cache to write")->required();

    EvolveArgs evolve;
    auto *c_evolve = app.add_subcommand("evolve", "Search for a circuit architecture");
    c_evolve->add_option("--dataset", evolve.dataset, "Dataset cache");
    c_evolve->add_option("--config", evolve.config, "Run configuration file");
    c_evolve->add_option("--set", evolve.overrides, "Override one key, e.g. evolution.population=10");
    c_evolve->add_option("--seed", evolve.seed, "Master seed (overrides evolution.seed)");
    c_evolve->add_option("--out", evolve.out, "Run directory")->required();
    c_evolve->add_option("--jobs", evolve.jobs, "Worker threads")->check(CLI::Range(1, 1024));
    auto *resume_flag = c_evolve->add_flag("--resume", evolve.resume, "Continue from the run directory's checkpoint");
    c_evolve->add_flag("--force", evolve.force, "Replace an existing run directory")->excludes(resume_flag);
    c_evolve->add_option("--stop-after", evolve.stop_after, "Stop after this many generations");
    c_evolve->add_flag("--quiet", evolve.quiet, "Only print the summary");

    EvaluateArgs evaluate;
    auto *c_eval = app.add_subcommand("evaluate", "Correlate a circuit's similarity scores with the reference distance");
    c_eval->add_option("--genome", evaluate.genome, "Genome JSON or QASM file")->required();
    c_eval->add_option("--dataset", evaluate.dataset, "Dataset cache")->required();
    c_eval->add_option("--config", evaluate.config, "Run configuration file");
    c_eval->add_option("--set", evaluate.overrides, "Override one key, e.g. eval.histogram_bins=8");
    c_eval->add_option("--pairs", evaluate.pairs, "Number of random pairs");
    c_eval->add_option("--seed", evaluate.seed, "Pair sampling seed");
    c_eval->add_option("--distance", evaluate.distance, "Reference distance")->check(CLI::IsMember({"hist", "pixel"}));
    c_eval->add_option("--matching", evaluate.matching, "Readout matching")
        ->check(CLI::IsMember({"role", "identity"}));
    c_eval->add_option("--out", evaluate.out, "Report directory")->required();
    c_eval->add_option("--jobs", evaluate.jobs, "Worker threads")->check(CLI::Range(1, 1024));
    c_eval->add_flag("--force", evaluate.force, "Replace an existing report directory");

    std::string export_genome;
    std::string export_out;
    auto *c_export = app.add_subcommand("export-qasm", "Write a genome as OpenQASM 2.0");
    c_export->add_option("--genome", export_genome, "Genome JSON file")->required();
    c_export->add_option("--out", export_out, "Output file (stdout when omitted)");

    BaselineArgs baseline;
    auto *c_baseline = app.add_subcommand("baseline", "Write the ladder template circuit");
    c_baseline->add_option("--qubits", baseline.qubits, "Qubit count")->check(CLI::Range(2, 30));
    c_baseline->add_option("--layers", baseline.layers, "Layer count")->check(CLI::Range(1, 10000));
    c_baseline->add_option("--seed", baseline.seed, "Angle seed");
    c_baseline->add_option("--out", baseline.out, "Output file, .qasm for QASM, otherwise genome JSON");

    std::string config_path;
    std::vector<std::string> config_overrides;
    auto *c_config = app.add_subcommand("config", "Print the resolved configuration (defaults when no file given)");
    c_config->add_option("--config", config_path, "Run configuration file");
    c_config->add_option("--set", config_overrides, "Override one key");

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.emplace_back("qusl");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const auto &s : argv_storage) {
        argv.push_back(s.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (c_ingest->parsed()) {
            return cmd_ingest(ingest, out);
        }
        if (c_synth->parsed()) {
            return cmd_synth(synth, out);
        }
        if (c_evolve->parsed()) {
            return cmd_evolve(evolve, out);
        }
        if (c_eval->parsed()) {
            return cmd_evaluate(evaluate, out);
        }
        if (c_export->parsed()) {
            return cmd_export_qasm(export_genome, export_out, out);
        }
        if (c_baseline->parsed()) {
            return cmd_baseline(baseline, out);
        }
        if (c_config->parsed()) {
            return cmd_config(config_path, config_overrides, out);
        }
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const FormatError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CheckpointError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}

} // namespace qusl::cli
