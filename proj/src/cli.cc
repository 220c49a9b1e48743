// Copyright 2026 The qopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qopt/cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <optional>
#include <sstream>

namespace qopt::cli {

namespace {

using json = nlohmann::ordered_json;

// Raised for bad flag values that CLI11 itself cannot validate.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double round_sig10(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return std::strtod(buf, nullptr);
}

void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << text;
    f.flush();
    if (!f) {
        throw std::runtime_error("cannot write " + path);
    }
}

// Agent flags shared by optimize and bench.
struct AgentFlags {
    double alpha = 0.1;
    double gamma = 0.9;
    double eps0 = 1.0;
    double eps_min = 0.05;
    double eps_decay_frac = 0.5;
    double cost_c = 0.1;
    std::size_t epochs = 8000;
    std::optional<std::size_t> max_steps;

    void add_to(CLI::App &app) {
        app.add_option("--epochs", epochs, "Training epochs")->capture_default_str();
        app.add_option("--alpha", alpha, "Learning rate in (0, 1]")->capture_default_str();
        app.add_option("--gamma", gamma, "Discount in [0, 1)")->capture_default_str();
        app.add_option("--eps0", eps0, "Initial exploration rate")->capture_default_str();
        app.add_option("--eps-min", eps_min, "Final exploration rate")->capture_default_str();
        app.add_option("--eps-decay-frac", eps_decay_frac, "Fraction of epochs spent decaying epsilon")
            ->capture_default_str();
        app.add_option("--cost-c", cost_c, "APPLY cost for rpow, in (0, 0.2]")->capture_default_str();
        app.add_option("--max-steps", max_steps, "Steps per epoch (default 10 * qubits)");
    }

    AgentConfig to_config(std::size_t n_qubits, std::uint64_t seed, RewardKind kind) const {
        AgentConfig cfg = default_config(n_qubits);
        cfg.alpha = alpha;
        cfg.gamma = gamma;
        cfg.eps0 = eps0;
        cfg.eps_min = eps_min;
        cfg.eps_decay_fraction = eps_decay_frac;
        cfg.epochs = epochs;
        cfg.seed = seed;
        cfg.reward_kind = kind;
        cfg.reward_params.cost_c = cost_c;
        if (max_steps) {
            cfg.max_steps = *max_steps;
        }
        try {
            cfg.validate();
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
        return cfg;
    }
};

template <typename T>
std::vector<T> parse_list(const std::string &text, const char *what) {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            continue;
        }
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(item, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != item.size() || item[0] == '-') {
            throw UsageError(std::string("bad ") + what + " entry '" + item + "'");
        }
        out.push_back(static_cast<T>(v));
    }
    if (out.empty()) {
        throw UsageError(std::string(what) + " list is empty");
    }
    return out;
}

std::vector<RewardKind> parse_kinds(const std::string &text) {
    std::vector<RewardKind> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            continue;
        }
        try {
            out.push_back(parse_reward_kind(item));
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
    }
    if (out.empty()) {
        throw UsageError("rewards list is empty");
    }
    return out;
}

json summary_object(const SummaryRow &row) {
    json j;
    j["qubits"] = row.qubits;
    j["reward"] = std::string(reward_name(row.reward_kind));
    j["seed"] = row.seed ? json(*row.seed) : json("median");
    j["epochs"] = row.epochs;
    j["min_rew"] = round_sig10(row.min_rew);
    j["max_rew"] = round_sig10(row.max_rew);
    j["min_depth"] = row.min_depth;
    j["freq_min_depth"] = row.freq_min_depth;
    j["max_depth"] = row.max_depth;
    j["freq_max_depth"] = row.freq_max_depth;
    j["freq_depth3"] = row.freq_depth3;
    return j;
}

// Fill options of `sub` that were not given on the command line from a
// TOML/INI file. Explicit flags always win.
void apply_config_file(CLI::App &sub, const std::string &path) {
    if (path.empty()) {
        return;
    }
    std::vector<CLI::ConfigItem> items;
    try {
        items = CLI::ConfigTOML().from_file(path);
    } catch (const CLI::FileError &e) {
        throw UsageError(e.what());
    }
    for (const CLI::ConfigItem &item : items) {
        if (!item.parents.empty() && !(item.parents.size() == 1 && item.parents[0] == sub.get_name())) {
            continue;
        }
        if (item.name == "++" || item.name == "--") {
            continue;
        }
        CLI::Option *op = sub.get_option_no_throw("--" + item.name);
        if (op == nullptr) {
            std::string dashed = item.name;
            std::replace(dashed.begin(), dashed.end(), '_', '-');
            op = sub.get_option_no_throw("--" + dashed);
        }
        if (op == nullptr || item.name == "config") {
            throw UsageError("unknown key '" + item.name + "' in " + path);
        }
        if (op->count() > 0) {
            continue;
        }
        try {
            op->add_result(item.inputs);
            op->run_callback();
        } catch (const CLI::Error &e) {
            throw UsageError(std::string("config ") + path + ": " + e.what());
        }
    }
}

void require_value(const std::string &value, const char *flag) {
    if (value.empty()) {
        throw UsageError(std::string(flag) + " is required");
    }
}

int cmd_generate(std::size_t qubits, const std::string &path, std::ostream &err) {
    if (qubits < 2) {
        err << "qubits must be >= 2\n";
        return 2;
    }
    write_circuit_file(path, generate_bv(qubits));
    return 0;
}

int cmd_metrics(const std::string &path, std::ostream &out) {
    out << metrics_json(metrics(read_circuit_file(path))) << "\n";
    return 0;
}

int cmd_oracle(const std::string &path, std::size_t max_nodes, std::ostream &out) {
    OracleResult r = oracle_min_depth(read_circuit_file(path), max_nodes);
    json j;
    j["min_depth"] = r.min_depth;
    j["exhaustive"] = r.exhaustive;
    j["nodes_explored"] = r.nodes_explored;
    out << j.dump() << "\n";
    return 0;
}

struct OptimizeArgs {
    std::string circuit;
    std::string reward;
    std::string out_csv;
    std::string summary;
    std::string best_circuit;
    std::uint64_t seed = 1;
};

int cmd_optimize(const OptimizeArgs &a, const AgentFlags &flags) {
    RewardKind kind;
    try {
        kind = parse_reward_kind(a.reward);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    Circuit start = read_circuit_file(a.circuit);
    AgentConfig cfg = flags.to_config(start.n_qubits(), a.seed, kind);

    std::optional<Circuit> best;
    std::size_t best_depth = std::numeric_limits<std::size_t>::max();
    TrainResult res = train(start, cfg, [&](const EpochOutcome &o) {
        if (!a.best_circuit.empty() && o.record.final_depth < best_depth) {
            best_depth = o.record.final_depth;
            best = o.final_circuit;
        }
    });

    std::ostringstream csv;
    write_epoch_csv(csv, res.records);
    write_text_file(a.out_csv, csv.str());
    if (!a.summary.empty()) {
        if (res.records.empty()) {
            throw std::runtime_error("no epochs were run; nothing to summarize");
        }
        SummaryRow row = summarize(start.n_qubits(), kind, a.seed, res.records);
        write_text_file(a.summary, summary_object(row).dump(2) + "\n");
    }
    if (!a.best_circuit.empty()) {
        write_circuit_file(a.best_circuit, best ? *best : start);
    }
    return 0;
}

struct BenchArgs {
    std::string sizes = "3,6,9,12";
    std::string rewards = "ratio,rpow";
    std::string seeds = "1,2,3,4,5";
    std::string out_dir;
    int jobs = 1;
};

int cmd_bench(const BenchArgs &a, const AgentFlags &flags, std::ostream &out) {
    auto sizes = parse_list<std::size_t>(a.sizes, "sizes");
    auto kinds = parse_kinds(a.rewards);
    auto seeds = parse_list<std::uint64_t>(a.seeds, "seeds");
    for (std::size_t n : sizes) {
        if (n < 2) {
            throw UsageError("qubits must be >= 2");
        }
    }
    if (a.jobs < 1) {
        throw UsageError("jobs must be >= 1");
    }
    if (flags.epochs == 0) {
        throw UsageError("bench needs at least one epoch");
    }
    // Validate once up front; per-run max_steps is derived from each size.
    AgentConfig tmpl = flags.to_config(sizes.front(), seeds.front(), kinds.front());
    tmpl.max_steps = flags.max_steps.value_or(0);

    std::filesystem::create_directories(a.out_dir);
    Table1Result result = run_table1(sizes, kinds, tmpl, seeds, a.jobs);

    json runs = json::array();
    for (const Table1Run &run : result.runs) {
        std::string stem = a.out_dir + "/bv" + std::to_string(run.qubits) + "_" +
                           std::string(reward_name(run.kind)) + "_seed" + std::to_string(run.seed);
        std::ostringstream csv;
        write_epoch_csv(csv, run.records);
        write_text_file(stem + ".csv", csv.str());
        write_text_file(stem + ".summary.json", summary_object(run.summary).dump(2) + "\n");
        runs.push_back(summary_object(run.summary));
    }
    json aggregate = json::array();
    for (const SummaryRow &row : result.aggregate) {
        aggregate.push_back(summary_object(row));
    }
    json table;
    table["aggregate"] = aggregate;
    table["runs"] = runs;
    write_text_file(a.out_dir + "/table1.json", table.dump(2) + "\n");
    std::string md = aggregate_markdown(result.aggregate);
    write_text_file(a.out_dir + "/table1.md", md);
    out << md;
    return 0;
}

}  // namespace

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    std::string s(buf);
    if (s.find_first_of(".eEn") == std::string::npos) {
        s += ".0";
    }
    return s;
}

void write_epoch_csv(std::ostream &out, const std::vector<EpochRecord> &records) {
    out << "epoch,steps,applied,cum_reward,final_depth,final_gate_count,final_str\n";
    for (const EpochRecord &r : records) {
        out << r.epoch << ',' << r.steps << ',' << r.applied << ',' << format_real(r.cum_reward) << ','
            << r.final_depth << ',' << r.final_count << ',' << format_real(r.final_str) << '\n';
    }
}

std::string metrics_json(const Metrics &m) {
    json j;
    j["depth"] = m.depth;
    j["gate_count"] = m.gate_count;
    j["interaction_strength"] = round_sig10(m.interaction_strength);
    return j.dump();
}

std::string summary_json(const SummaryRow &row) { return summary_object(row).dump(); }

std::string aggregate_markdown(const std::vector<SummaryRow> &rows) {
    std::ostringstream md;
    md << "| qubits | reward | min(rew) | max(rew) | mind | fq(mind) | maxd | fq(maxd) | fq(depth 3) |\n";
    md << "|---|---|---|---|---|---|---|---|---|\n";
    for (const SummaryRow &r : rows) {
        char rew[64];
        std::snprintf(rew, sizeof rew, "%.2f | %.2f", r.min_rew, r.max_rew);
        md << "| " << r.qubits << " | " << reward_name(r.reward_kind) << " | " << rew << " | " << r.min_depth
           << " | " << r.freq_min_depth << " | " << r.max_depth << " | " << r.freq_max_depth << " | "
           << r.freq_depth3 << " |\n";
    }
    return md.str();
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Q-learning optimizer for CNOT+H circuits over template rewrites", "qopt"};
    app.require_subcommand(1);

    auto *generate = app.add_subcommand("generate", "Write a benchmark circuit");
    generate->require_subcommand(1);
    auto *gen_bv = generate->add_subcommand("bv", "Bernstein-Vazirani circuit");
    std::size_t gen_qubits = 0;
    std::string gen_out;
    gen_bv->add_option("--qubits", gen_qubits, "Number of qubits (>= 2)")->required();
    gen_bv->add_option("--out", gen_out, "Output circuit file")->required();

    auto *metrics_cmd = app.add_subcommand("metrics", "Print depth, gate count and interaction strength");
    std::string metrics_path;
    metrics_cmd->add_option("--circuit", metrics_path, "Circuit file")->required();

    auto *oracle = app.add_subcommand("oracle", "Breadth-first minimum reachable depth");
    std::string oracle_path;
    std::size_t max_nodes = 100000;
    oracle->add_option("--circuit", oracle_path, "Circuit file")->required();
    oracle->add_option("--max-nodes", max_nodes, "Node cap")->capture_default_str();

    auto *optimize = app.add_subcommand("optimize", "Train a Q-learning agent on one circuit");
    std::string optimize_config;
    optimize->add_option("--config", optimize_config, "TOML/INI file with flag defaults");
    OptimizeArgs opt;
    AgentFlags opt_flags;
    // Required values may also come from --config, so they are checked after it is applied.
    optimize->add_option("--circuit", opt.circuit, "Circuit file (required)");
    optimize->add_option("--reward", opt.reward, "ratio | rpow | fosel (required)");
    auto *seed_opt = optimize->add_option("--seed", opt.seed, "RNG seed (falls back to $QOPT_SEED, then 1)");
    optimize->add_option("--out", opt.out_csv, "Per-epoch CSV (required)");
    optimize->add_option("--summary", opt.summary, "Summary JSON");
    optimize->add_option("--best-circuit", opt.best_circuit, "Write the lowest-depth final circuit here");
    opt_flags.add_to(*optimize);

    auto *bench = app.add_subcommand("bench", "Benchmark experiments");
    bench->require_subcommand(1);
    auto *table1 = bench->add_subcommand("table1", "Reward comparison on BV circuits");
    std::string bench_config;
    table1->add_option("--config", bench_config, "TOML/INI file with flag defaults");
    BenchArgs bargs;
    AgentFlags bench_flags;
    table1->add_option("--sizes", bargs.sizes, "Comma-separated qubit counts")->capture_default_str();
    table1->add_option("--rewards", bargs.rewards, "Comma-separated reward kinds")->capture_default_str();
    table1->add_option("--seeds", bargs.seeds, "Comma-separated seeds")->capture_default_str();
    table1->add_option("--out-dir", bargs.out_dir, "Output directory (required)");
    table1->add_option("--jobs", bargs.jobs, "Concurrent runs")->capture_default_str();
    bench_flags.add_to(*table1);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen_bv->parsed()) {
            return cmd_generate(gen_qubits, gen_out, err);
        }
        if (metrics_cmd->parsed()) {
            return cmd_metrics(metrics_path, out);
        }
        if (oracle->parsed()) {
            return cmd_oracle(oracle_path, max_nodes, out);
        }
        if (optimize->parsed()) {
            apply_config_file(*optimize, optimize_config);
            require_value(opt.circuit, "--circuit");
            require_value(opt.reward, "--reward");
            require_value(opt.out_csv, "--out");
            if (seed_opt->count() == 0) {
                if (const char *env = std::getenv("QOPT_SEED"); env != nullptr && *env != '\0') {
                    auto parsed = parse_list<std::uint64_t>(env, "QOPT_SEED");
                    if (parsed.size() != 1) {
                        throw UsageError("QOPT_SEED must be a single integer");
                    }
                    opt.seed = parsed.front();
                }
            }
            return cmd_optimize(opt, opt_flags);
        }
        if (table1->parsed()) {
            apply_config_file(*table1, bench_config);
            require_value(bargs.out_dir, "--out-dir");
            return cmd_bench(bargs, bench_flags, out);
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace qopt::cli
