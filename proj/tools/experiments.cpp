#include "experiments.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "json.hpp"
#include "xtalk/active_attack.hpp"
#include "xtalk/errors.hpp"
#include "xtalk/passive_attack.hpp"
#include "xtalk/pipeline.hpp"
#include "xtalk/parallel.hpp"
#include "xtalk/report.hpp"
#include "xtalk/scenarios.hpp"
#include "xtalk/rng.hpp"

namespace xtalk::cli {

namespace fs = std::filesystem;
using nlohmann::json;

DeviceTopology resolve_device(const ExperimentConfig& config) {
    if (config.device_path.has_value()) return load_topology(*config.device_path);
    return build_heavy_hex(127);
}

CrosstalkModel resolve_model(const ExperimentConfig& config) {
    if (config.noise_path.has_value()) return load_noise_profile(*config.noise_path);
    return CrosstalkModel::calibrated_default();
}

namespace {

json config_json(const ExperimentConfig& c) {
    json j;
    j["device"] = c.device_path.has_value() ? json(*c.device_path) : json("heavy-hex-127");
    j["noise"] = c.noise_path.has_value() ? json(*c.noise_path) : json("calibrated-default");
    j["shots"] = c.shots;
    j["probe_shots"] = c.probe_shots;
    j["transpile_seed"] = c.transpile_seed;
    j["rng_seed"] = c.rng_seed;
    j["strategy"] = c.strategy;
    j["k_grid"] = c.k_grid;
    j["matrix_k"] = c.matrix_k;
    j["eval_reps"] = c.eval_reps;
    j["victim_pair"] = {c.victim_pair.first, c.victim_pair.second};
    j["fixed_qubit"] = c.fixed_qubit;
    j["marked"] = c.marked;
    j["attacker_pair"] = {c.attacker_pair.first, c.attacker_pair.second};
    j["sweep_start"] = c.sweep_start;
    j["sweep_count"] = c.sweep_count;
    return j;
}

void write_json(const fs::path& path, const json& doc) {
    write_file_atomic(path.string(), doc.dump(2) + "\n");
}

void write_provenance(const ExperimentConfig& config, const std::string& command,
                      const std::vector<std::string>& outputs) {
    const json cfg = config_json(config);
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(cfg.dump())));
    json doc;
    doc["command"] = command;
    doc["config"] = cfg;
    doc["config_hash"] = hash;
    doc["seeds"] = {{"transpile", config.transpile_seed}, {"rng", config.rng_seed}};
    doc["version"] = kVersion;
    doc["outputs"] = outputs;
    write_json(fs::path(config.out_dir) / "provenance.json", doc);
}

std::string fmt_acc(double v) { return format_double(v, 5); }
std::string fmt_dev(double v) { return format_double(v, 2); }

json option_json(const AttackOption& o) {
    return json{{"attacker_pair", {o.attacker_pair.first, o.attacker_pair.second}},
                {"acc0", o.acc0},
                {"deviation_pct", o.deviation_pct},
                {"severity", severity_name(o.severity)}};
}

json report_json(const AttackReport& r) {
    return json{{"victim_qubits", r.victim_qubits},
                {"attacker_pair", {r.attacker_pair.first, r.attacker_pair.second}},
                {"swap_path", r.attacker_path.nodes},
                {"acc0", r.acc0},
                {"deviation_pct", r.deviation_pct},
                {"severity", severity_name(r.severity)},
                {"intersected", r.intersected},
                {"shots", r.shots},
                {"seeds", {{"transpile", r.seeds.transpile}, {"rng", r.seeds.rng}}}};
}

// ---------------------------------------------------------------------------
// Passive-experiment scaffolding shared by experiments 3 and 4.
// ---------------------------------------------------------------------------

constexpr SelectionStrategy kAllStrategies[] = {
    SelectionStrategy::Optimal, SelectionStrategy::Default, SelectionStrategy::NonOptimal};

void run_passive_experiment(const ExperimentConfig& config, const DeviceTopology& device,
                            const CrosstalkModel& model, const PassiveScenario& setup) {
    const fs::path out(config.out_dir);
    std::vector<std::string> outputs;

    // Learning stage.
    const Seeds learn_seeds{config.transpile_seed,
                            derive_seed(config.rng_seed, setup.name + "-learn")};
    SignatureDataset dataset = learn_signatures(setup.labels, setup.victim_builder, setup.listeners,
                                                device, model, config.shots, learn_seeds);
    dataset.provenance = {{"command", setup.name},
                          {"device", config.device_path.value_or("heavy-hex-127")},
                          {"transpile_seed", std::to_string(config.transpile_seed)},
                          {"rng_seed", std::to_string(config.rng_seed)},
                          {"gamma_path", format_double(model.gamma_path, 6)},
                          {"gamma_adjacent", format_double(model.gamma_adjacent, 6)},
                          {"decay", format_double(model.decay, 6)},
                          {"cap", format_double(model.cap, 6)}};
    save_dataset(dataset, (out / "dataset.json").string());
    outputs.push_back("dataset.json");

    // Fresh-seed evaluation runs.
    std::vector<std::pair<std::string, CrosstalkSignature>> evals(setup.labels.size() *
                                                                  config.eval_reps);
    parallel_for(evals.size(), [&](size_t i) {
        const std::string& label = setup.labels[i % setup.labels.size()];
        const size_t rep = i / setup.labels.size();
        const Seeds eval_seeds{config.transpile_seed,
                               derive_seed(config.rng_seed, setup.name + "-eval:" + label, rep)};
        evals[i] = {label, collect_signature(setup.victim_builder(label), setup.listeners, device,
                                             model, config.shots, eval_seeds)};
    });

    // Tradeoff curves per strategy.
    const std::vector<size_t> k_grid =
        config.k_grid.empty() ? setup.default_k_grid : config.k_grid;
    for (SelectionStrategy strategy : kAllStrategies) {
        const auto curve = tradeoff_curve(dataset, strategy, evals, k_grid);
        CsvWriter csv;
        csv.row({"k", "mean_acc1", "mean_confidence"});
        for (const TradeoffPoint& p : curve) {
            csv.row({std::to_string(p.k), format_double(p.mean_acc1, 6),
                     format_double(p.mean_confidence, 6)});
        }
        const std::string name = "tradeoff_" + strategy_name(strategy) + ".csv";
        csv.write((out / name).string());
        outputs.push_back(name);
    }

    // MSE matrices: dataset rows vs first-rep observations, restricted to the
    // selected listening subset.
    const std::vector<QubitScore> ranked = rank_qubits(dataset);
    const std::vector<size_t> matrix_k =
        config.matrix_k.empty() ? setup.default_matrix_k : config.matrix_k;
    for (size_t k : matrix_k) {
        for (SelectionStrategy strategy : kAllStrategies) {
            const std::vector<qubit_t> selected = select_qubits(ranked, k, strategy);
            const SignatureDataset small = restrict_dataset(dataset, selected);
            CsvWriter csv;
            {
                std::vector<std::string> header{"label"};
                for (const std::string& label : setup.labels) header.push_back(label);
                csv.row(header);
            }
            for (size_t row = 0; row < small.size(); row++) {
                std::vector<std::string> cells{small.labels[row]};
                const CrosstalkSignature row_sig = small.signature_at(row);
                for (size_t col = 0; col < setup.labels.size(); col++) {
                    const auto& observed = evals[col].second;
                    cells.push_back(
                        format_double(mse(row_sig, restrict_signature(observed, selected)), 4));
                }
                csv.row(cells);
            }
            const std::string name = "mse_matrix_k" + std::to_string(k) + "_" +
                                     strategy_name(strategy) + ".csv";
            csv.write((out / name).string());
            outputs.push_back(name);
        }
    }

    // Summary: full-k accuracy per strategy plus the smallest grid k reaching
    // perfect prediction under the optimal strategy.
    json summary;
    summary["labels"] = setup.labels.size();
    summary["listening_qubits"] = setup.listeners.size();
    summary["eval_runs"] = evals.size();
    for (SelectionStrategy strategy : kAllStrategies) {
        const std::vector<size_t> full{setup.listeners.size()};
        const auto point = tradeoff_curve(dataset, strategy, evals, full).front();
        summary["full_k"][strategy_name(strategy)] = {
            {"mean_acc1", point.mean_acc1}, {"mean_confidence", point.mean_confidence}};
    }
    {
        const auto curve = tradeoff_curve(dataset, SelectionStrategy::Optimal, evals, k_grid);
        json grid = json::array();
        std::optional<size_t> min_perfect;
        for (const TradeoffPoint& p : curve) {
            grid.push_back({{"k", p.k},
                            {"mean_acc1", p.mean_acc1},
                            {"mean_confidence", p.mean_confidence}});
            if (!min_perfect.has_value() && p.mean_acc1 >= 1.0) min_perfect = p.k;
        }
        summary["optimal_curve"] = grid;
        summary["min_grid_k_with_perfect_acc1"] =
            min_perfect.has_value() ? json(*min_perfect) : json(nullptr);
    }
    write_json(out / "summary.json", summary);
    outputs.push_back("summary.json");

    write_provenance(config, setup.name, outputs);
    std::cout << setup.name << ": " << setup.labels.size() << " labels, "
              << setup.listeners.size() << " listeners -> " << config.out_dir << "\n";
}

void write_signature_json(const fs::path& path, const CrosstalkSignature& sig) {
    json doc{{"listening_qubits", sig.listening_qubits},
             {"ones_counts", sig.ones_counts},
             {"shots", sig.shots}};
    write_json(path, doc);
}

CrosstalkSignature load_signature_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open signature: " + path);
    try {
        json doc;
        in >> doc;
        CrosstalkSignature sig;
        sig.listening_qubits = doc.at("listening_qubits").get<std::vector<qubit_t>>();
        sig.ones_counts = doc.at("ones_counts").get<std::vector<uint64_t>>();
        sig.shots = doc.at("shots").get<uint64_t>();
        return sig;
    } catch (const json::exception& e) {
        throw ParseError("malformed signature " + path + ": " + e.what());
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Experiment 1: exhaustive + path-informed reconnaissance for a fixed victim.
// ---------------------------------------------------------------------------

void cmd_experiment1(const ExperimentConfig& config) {
    const DeviceTopology device = resolve_device(config);
    const CrosstalkModel model = resolve_model(config);
    const VictimSpec victim{grover_2q(config.marked),
                            Layout({config.victim_pair.first, config.victim_pair.second})};
    const fs::path out(config.out_dir);

    const Seeds probe_seeds{config.transpile_seed, derive_seed(config.rng_seed, "exp1-probe")};
    const ReconResult probe =
        recon_exhaustive(victim, config.fixed_qubit, device, model, config.probe_shots,
                         probe_seeds);

    // Re-measure every option at the full shot budget for the final table.
    const uint64_t final_master = derive_seed(config.rng_seed, "exp1-final");
    std::vector<AttackOption> options(probe.options.size());
    for (size_t i = 0; i < probe.options.size(); i++) {
        const auto pair = probe.options[i].attacker_pair;
        const Seeds seeds{config.transpile_seed,
                          derive_seed(final_master, "pair",
                                      (static_cast<uint64_t>(pair.first) << 32) | pair.second)};
        const AttackReport r = execute_active(victim, pair, device, model, config.shots, seeds);
        options[i] = {pair, r.acc0, r.deviation_pct, r.severity};
    }
    std::sort(options.begin(), options.end(), [](const AttackOption& a, const AttackOption& b) {
        if (a.deviation_pct != b.deviation_pct) return a.deviation_pct > b.deviation_pct;
        return a.attacker_pair.second < b.attacker_pair.second;
    });

    CsvWriter table;
    table.row({"second_qubit", "acc0", "deviation_pct", "severity"});
    for (const AttackOption& o : options) {
        table.row({std::to_string(o.attacker_pair.second), fmt_acc(o.acc0),
                   fmt_dev(o.deviation_pct), severity_name(o.severity)});
    }
    table.write((out / "options.csv").string());

    CsvWriter series;
    series.row({"second_qubit", "acc0"});
    {
        std::vector<AttackOption> by_position = options;
        std::sort(by_position.begin(), by_position.end(),
                  [](const AttackOption& a, const AttackOption& b) {
                      return a.attacker_pair.second < b.attacker_pair.second;
                  });
        for (const AttackOption& o : by_position) {
            series.row({std::to_string(o.attacker_pair.second), fmt_acc(o.acc0)});
        }
    }
    series.write((out / "series.csv").string());

    const ReconResult informed = recon_path_informed(victim, config.fixed_qubit, device, model,
                                                     config.probe_shots, probe_seeds);
    CsvWriter scenario2;
    scenario2.row({"second_qubit", "acc0", "deviation_pct", "severity"});
    for (const AttackOption& o : informed.options) {
        scenario2.row({std::to_string(o.attacker_pair.second), fmt_acc(o.acc0),
                       fmt_dev(o.deviation_pct), severity_name(o.severity)});
    }
    scenario2.write((out / "scenario2.csv").string());

    json mirror;
    mirror["options"] = json::array();
    for (const AttackOption& o : options) mirror["options"].push_back(option_json(o));
    mirror["scenario2_options"] = json::array();
    for (const AttackOption& o : informed.options) {
        mirror["scenario2_options"].push_back(option_json(o));
    }
    mirror["searched_pairs"] = {{"exhaustive", probe.searched_pairs},
                                {"path_informed", informed.searched_pairs}};
    write_json(out / "summary.json", mirror);

    write_provenance(config, "experiment1",
                     {"options.csv", "series.csv", "scenario2.csv", "summary.json"});
    std::cout << "experiment1: " << options.size() << " options ("
              << informed.searched_pairs << " path-informed) -> " << config.out_dir << "\n";
}

// ---------------------------------------------------------------------------
// Experiment 2: fixed attacker, victim swept along adjacent pairs.
// ---------------------------------------------------------------------------

void cmd_experiment2(const ExperimentConfig& config) {
    const DeviceTopology device = resolve_device(config);
    const CrosstalkModel model = resolve_model(config);
    const fs::path out(config.out_dir);

    std::vector<std::pair<qubit_t, qubit_t>> positions;
    for (size_t i = 0; i < config.sweep_count; i++) {
        const qubit_t v = config.sweep_start + static_cast<qubit_t>(i);
        positions.emplace_back(v, v + 1);
    }

    const Seeds seeds{config.transpile_seed, derive_seed(config.rng_seed, "exp2")};
    const auto reports = sweep_victim_positions(config.attacker_pair, grover_2q(config.marked),
                                                positions, device, model, config.shots, seeds);

    CsvWriter csv;
    csv.row({"v1", "v2", "intersects", "acc0", "deviation_pct", "severity"});
    json mirror = json::array();
    for (const AttackReport& r : reports) {
        csv.row({std::to_string(r.victim_qubits[0]), std::to_string(r.victim_qubits[1]),
                 r.intersected ? "TRUE" : "FALSE", fmt_acc(r.acc0), fmt_dev(r.deviation_pct),
                 severity_name(r.severity)});
        mirror.push_back(report_json(r));
    }
    csv.write((out / "sweep.csv").string());
    write_json(out / "sweep.json", mirror);

    write_provenance(config, "experiment2", {"sweep.csv", "sweep.json"});
    std::cout << "experiment2: " << reports.size() << " positions -> " << config.out_dir
              << "\n";
}

void cmd_experiment3(const ExperimentConfig& config) {
    const DeviceTopology device = resolve_device(config);
    const CrosstalkModel model = resolve_model(config);
    run_passive_experiment(config, device, model, size_prediction_scenario(device));
}

void cmd_experiment4(const ExperimentConfig& config) {
    const DeviceTopology device = resolve_device(config);
    const CrosstalkModel model = resolve_model(config);
    run_passive_experiment(config, device, model, value_prediction_scenario(device));
}

// ---------------------------------------------------------------------------
// Ad-hoc commands.
// ---------------------------------------------------------------------------

void cmd_recon(const ReconArgs& args) {
    const ExperimentConfig& config = args.config;
    const DeviceTopology device = resolve_device(config);
    const CrosstalkModel model = resolve_model(config);
    const VictimSpec victim{grover_2q(config.marked),
                            Layout({config.victim_pair.first, config.victim_pair.second})};
    const Seeds seeds{config.transpile_seed, derive_seed(config.rng_seed, "recon")};

    ReconResult result;
    if (args.scenario == "exhaustive") {
        result = recon_exhaustive(victim, config.fixed_qubit, device, model, config.probe_shots,
                                  seeds);
    } else if (args.scenario == "path-informed") {
        result = recon_path_informed(victim, config.fixed_qubit, device, model,
                                     config.probe_shots, seeds);
    } else {
        throw ConfigError("unknown scenario \"" + args.scenario +
                          "\" (expected exhaustive|path-informed)");
    }

    CsvWriter csv;
    csv.row({"second_qubit", "acc0", "deviation_pct", "severity"});
    for (const AttackOption& o : result.options) {
        csv.row({std::to_string(o.attacker_pair.second), fmt_acc(o.acc0),
                 fmt_dev(o.deviation_pct), severity_name(o.severity)});
    }
    csv.write((fs::path(config.out_dir) / "options.csv").string());

    json summary{{"scenario", args.scenario},
                 {"searched_pairs", result.searched_pairs},
                 {"options", result.options.size()}};
    write_json(fs::path(config.out_dir) / "summary.json", summary);
    write_provenance(config, "recon", {"options.csv", "summary.json"});
    std::cout << "recon(" << args.scenario << "): searched " << result.searched_pairs
              << " pairs -> " << config.out_dir << "\n";
}

void cmd_attack(const ExperimentConfig& config) {
    const DeviceTopology device = resolve_device(config);
    const CrosstalkModel model = resolve_model(config);
    const VictimSpec victim{grover_2q(config.marked),
                            Layout({config.victim_pair.first, config.victim_pair.second})};
    const Seeds seeds{config.transpile_seed, derive_seed(config.rng_seed, "attack")};

    const AttackReport report =
        execute_active(victim, config.attacker_pair, device, model, config.shots, seeds);
    write_json(fs::path(config.out_dir) / "report.json", report_json(report));
    write_provenance(config, "attack", {"report.json"});
    std::cout << "attack (" << config.attacker_pair.first << "," << config.attacker_pair.second
              << ") vs victim (" << config.victim_pair.first << "," << config.victim_pair.second
              << "): acc0 " << fmt_acc(report.acc0) << ", deviation "
              << fmt_dev(report.deviation_pct) << "%, " << severity_name(report.severity)
              << (report.intersected ? " [path intersects victim]" : "") << "\n";
}

void cmd_learn(const LearnArgs& args) {
    const ExperimentConfig& config = args.config;
    const DeviceTopology device = resolve_device(config);
    const CrosstalkModel model = resolve_model(config);
    const PassiveScenario setup = args.mode == "value" ? value_prediction_scenario(device)
                                                    : size_prediction_scenario(device);

    const Seeds seeds{config.transpile_seed, derive_seed(config.rng_seed, setup.name + "-learn")};
    SignatureDataset dataset = learn_signatures(setup.labels, setup.victim_builder, setup.listeners,
                                                device, model, config.shots, seeds);
    dataset.provenance = {{"command", "learn"},
                          {"mode", args.mode},
                          {"transpile_seed", std::to_string(config.transpile_seed)},
                          {"rng_seed", std::to_string(config.rng_seed)}};
    save_dataset(dataset, (fs::path(config.out_dir) / "dataset.json").string());
    write_provenance(config, "learn", {"dataset.json"});
    std::cout << "learn(" << args.mode << "): " << dataset.size() << " signatures -> "
              << config.out_dir << "\n";
}

void cmd_predict(const PredictArgs& args) {
    const ExperimentConfig& config = args.config;
    SignatureDataset dataset = load_dataset(args.dataset_path);

    CrosstalkSignature observed;
    std::optional<std::string> true_label;
    if (args.observed_path.has_value()) {
        observed = load_signature_json(*args.observed_path);
    } else if (args.label.has_value()) {
        const DeviceTopology device = resolve_device(config);
        const CrosstalkModel model = resolve_model(config);
        const PassiveScenario setup = args.mode == "value" ? value_prediction_scenario(device)
                                                        : size_prediction_scenario(device);
        const Seeds seeds{config.transpile_seed,
                          derive_seed(config.rng_seed, "predict-eval:" + *args.label)};
        observed = collect_signature(setup.victim_builder(*args.label), setup.listeners, device, model,
                                     config.shots, seeds);
        true_label = args.label;
        write_signature_json(fs::path(config.out_dir) / "observed.json", observed);
    } else {
        throw ConfigError("predict needs either --label or --observed");
    }

    if (args.k.has_value()) {
        const auto ranked = rank_qubits(dataset);
        const auto selected = select_qubits(ranked, *args.k, parse_strategy(config.strategy));
        dataset = restrict_dataset(dataset, selected);
        observed = restrict_signature(observed, selected);
    }

    const PredictionResult result = predict(dataset, observed, true_label);

    CsvWriter csv;
    csv.row({"label", "mse", "rank"});
    for (size_t rank = 0; rank < result.ranked_labels.size(); rank++) {
        csv.row({result.ranked_labels[rank], format_double(result.mse_values[rank], 4),
                 std::to_string(rank)});
    }
    csv.write((fs::path(config.out_dir) / "prediction.csv").string());

    json summary{{"predicted", result.predicted}, {"confidence", result.confidence}};
    if (result.true_rank.has_value()) {
        summary["true_rank"] = *result.true_rank;
        summary["acc1"] = *result.acc1;
    }
    write_json(fs::path(config.out_dir) / "prediction.json", summary);
    write_provenance(config, "predict", {"prediction.csv", "prediction.json"});

    std::cout << "predicted: " << result.predicted
              << " (confidence " << format_double(result.confidence, 6) << ")";
    if (result.acc1.has_value()) {
        std::cout << ", acc1 " << format_double(*result.acc1, 6);
    }
    std::cout << "\n";
}

void cmd_path_query(const PathQueryArgs& args) {
    const DeviceTopology device = resolve_device(args.config);
    const SwapPath path = swap_path(device, args.src, args.dst, args.config.transpile_seed);

    json doc{{"src", args.src},
             {"dst", args.dst},
             {"seed", args.config.transpile_seed},
             {"nodes", path.nodes},
             {"hops", path.nodes.size() - 1}};
    if (!args.victim.empty()) {
        doc["victim"] = args.victim;
        doc["intersects"] = path_intersects(path, args.victim);
    }
    std::cout << doc.dump(2) << "\n";
}

}  // namespace xtalk::cli
