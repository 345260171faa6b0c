#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "experiments.hpp"
#include "xtalk/errors.hpp"

using namespace xtalk;
using namespace xtalk::cli;

namespace {

std::pair<qubit_t, qubit_t> parse_pair(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw ConfigError("expected \"a,b\" qubit pair, got \"" + text + "\"");
    }
    try {
        const unsigned long a = std::stoul(text.substr(0, comma));
        const unsigned long b = std::stoul(text.substr(comma + 1));
        return {static_cast<qubit_t>(a), static_cast<qubit_t>(b)};
    } catch (const std::exception&) {
        throw ConfigError("expected \"a,b\" qubit pair, got \"" + text + "\"");
    }
}

std::vector<size_t> parse_size_list(const std::string& text) {
    std::vector<size_t> values;
    size_t pos = 0;
    try {
        while (pos <= text.size()) {
            const size_t comma = text.find(',', pos);
            const std::string item =
                text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (!item.empty()) values.push_back(std::stoul(item));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    } catch (const std::exception&) {
        throw ConfigError("expected a comma-separated list of sizes, got \"" + text + "\"");
    }
    if (values.empty()) throw ConfigError("empty size list");
    return values;
}

struct RawFlags {
    std::string device;
    std::string noise;
    std::string victim;
    std::string attacker;
    std::string k_grid;
    std::string matrix_k;
};

void add_common_flags(CLI::App* sub, ExperimentConfig& config, RawFlags& raw) {
    sub->add_option("--device", raw.device, "Topology JSON file (default: heavy-hex-127)");
    sub->add_option("--noise", raw.noise, "Noise profile JSON (default: calibrated profile)");
    sub->add_option("--shots", config.shots, "Shots per execution")->capture_default_str();
    sub->add_option("--transpile-seed", config.transpile_seed, "Routing tie-break seed")
        ->capture_default_str();
    sub->add_option("--seed", config.rng_seed, "Master RNG seed")->capture_default_str();
    sub->add_option("--out", config.out_dir, "Output directory")->capture_default_str();
}

void finalize_config(ExperimentConfig& config, const RawFlags& raw) {
    if (!raw.device.empty()) config.device_path = raw.device;
    if (!raw.noise.empty()) config.noise_path = raw.noise;
    if (!raw.victim.empty()) config.victim_pair = parse_pair(raw.victim);
    if (!raw.attacker.empty()) config.attacker_pair = parse_pair(raw.attacker);
    if (!raw.k_grid.empty()) config.k_grid = parse_size_list(raw.k_grid);
    if (!raw.matrix_k.empty()) config.matrix_k = parse_size_list(raw.matrix_k);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"crosstalk-arena: multi-tenant quantum-cloud SWAP crosstalk simulator"};
    app.require_subcommand(1);

    ExperimentConfig config;
    RawFlags raw;
    ReconArgs recon_args;
    LearnArgs learn_args;
    PredictArgs predict_args;
    PathQueryArgs path_args;
    std::string observed_path;
    std::string predict_label;
    size_t predict_k = 0;

    auto* exp1 = app.add_subcommand("experiment1", "Exhaustive reconnaissance table");
    add_common_flags(exp1, config, raw);
    exp1->add_option("--victim", raw.victim, "Victim physical pair a,b");
    exp1->add_option("--fixed-qubit", config.fixed_qubit, "Attacker's fixed first qubit")
        ->capture_default_str();
    exp1->add_option("--marked", config.marked, "Grover marked state")->capture_default_str();
    exp1->add_option("--probe-shots", config.probe_shots, "Shots per recon probe")
        ->capture_default_str();

    auto* exp2 = app.add_subcommand("experiment2", "Fixed-attacker victim-position sweep");
    add_common_flags(exp2, config, raw);
    exp2->add_option("--attacker", raw.attacker, "Attacker physical pair a,b");
    exp2->add_option("--marked", config.marked, "Grover marked state")->capture_default_str();
    exp2->add_option("--sweep-start", config.sweep_start, "First victim qubit of the sweep")
        ->capture_default_str();
    exp2->add_option("--sweep-count", config.sweep_count, "Number of adjacent pairs")
        ->capture_default_str();

    auto* exp3 = app.add_subcommand("experiment3", "Passive circuit-size prediction");
    add_common_flags(exp3, config, raw);
    exp3->add_option("--k", raw.k_grid, "Comma-separated listening sizes for the curves");
    exp3->add_option("--matrix-k", raw.matrix_k, "Listening sizes for MSE matrices");
    exp3->add_option("--eval-reps", config.eval_reps, "Fresh evaluation runs per label")
        ->capture_default_str();

    auto* exp4 = app.add_subcommand("experiment4", "Passive hidden-shift value prediction");
    add_common_flags(exp4, config, raw);
    exp4->add_option("--k", raw.k_grid, "Comma-separated listening sizes for the curves");
    exp4->add_option("--matrix-k", raw.matrix_k, "Listening sizes for MSE matrices");
    exp4->add_option("--eval-reps", config.eval_reps, "Fresh evaluation runs per label")
        ->capture_default_str();

    auto* recon = app.add_subcommand("recon", "Pre-attack reconnaissance");
    add_common_flags(recon, config, raw);
    recon->add_option("--victim", raw.victim, "Victim physical pair a,b");
    recon->add_option("--fixed-qubit", config.fixed_qubit, "Attacker's fixed first qubit")
        ->capture_default_str();
    recon->add_option("--marked", config.marked, "Grover marked state")->capture_default_str();
    recon->add_option("--probe-shots", config.probe_shots, "Shots per probe")
        ->capture_default_str();
    recon->add_option("--scenario", recon_args.scenario, "exhaustive | path-informed")
        ->capture_default_str();

    auto* attack = app.add_subcommand("attack", "Single active attack execution");
    add_common_flags(attack, config, raw);
    attack->add_option("--victim", raw.victim, "Victim physical pair a,b");
    attack->add_option("--attacker", raw.attacker, "Attacker physical pair a,b");
    attack->add_option("--marked", config.marked, "Grover marked state")->capture_default_str();

    auto* learn = app.add_subcommand("learn", "Signature-dataset learning only");
    add_common_flags(learn, config, raw);
    learn->add_option("--mode", learn_args.mode, "size | value")->capture_default_str();

    auto* predict = app.add_subcommand("predict", "Nearest-MSE prediction from a dataset");
    add_common_flags(predict, config, raw);
    predict->add_option("--dataset", predict_args.dataset_path, "SignatureDataset JSON")
        ->required();
    predict->add_option("--label", predict_label, "Run a fresh victim for this label");
    predict->add_option("--observed", observed_path, "Stored signature JSON to classify");
    predict->add_option("--mode", predict_args.mode, "size | value")->capture_default_str();
    predict->add_option("--k", predict_k, "Restrict to k selected listening qubits");
    predict->add_option("--strategy", config.strategy, "optimal | default | non-optimal")
        ->capture_default_str();

    auto* path_query = app.add_subcommand("path-query", "Inspect a routed SWAP path");
    add_common_flags(path_query, config, raw);
    path_query->add_option("--src", path_args.src, "Path source qubit")->required();
    path_query->add_option("--dst", path_args.dst, "Path destination qubit")->required();
    path_query->add_option("--victim", raw.victim, "Check intersection against this pair");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        finalize_config(config, raw);

        if (exp1->parsed()) {
            cmd_experiment1(config);
        } else if (exp2->parsed()) {
            cmd_experiment2(config);
        } else if (exp3->parsed()) {
            cmd_experiment3(config);
        } else if (exp4->parsed()) {
            cmd_experiment4(config);
        } else if (recon->parsed()) {
            recon_args.config = config;
            cmd_recon(recon_args);
        } else if (attack->parsed()) {
            cmd_attack(config);
        } else if (learn->parsed()) {
            learn_args.config = config;
            cmd_learn(learn_args);
        } else if (predict->parsed()) {
            predict_args.config = config;
            if (!predict_label.empty()) predict_args.label = predict_label;
            if (!observed_path.empty()) predict_args.observed_path = observed_path;
            if (predict_k > 0) predict_args.k = predict_k;
            cmd_predict(predict_args);
        } else if (path_query->parsed()) {
            path_args.config = config;
            if (!raw.victim.empty()) {
                const auto pair = parse_pair(raw.victim);
                path_args.victim = {pair.first, pair.second};
            }
            cmd_path_query(path_args);
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
