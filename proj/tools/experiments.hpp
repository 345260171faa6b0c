#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xtalk/noise.hpp"
#include "xtalk/topology.hpp"

namespace xtalk::cli {

struct ExperimentConfig {
    std::optional<std::string> device_path;  // default: built-in heavy-hex-127
    std::optional<std::string> noise_path;   // default: calibrated profile
    uint64_t shots = 4096;
    uint64_t probe_shots = 1024;
    uint64_t transpile_seed = 0;
    uint64_t rng_seed = 1;
    std::string out_dir = "out";
    std::string strategy = "optimal";
    std::vector<size_t> k_grid;       // empty: experiment default
    std::vector<size_t> matrix_k;     // empty: experiment default
    size_t eval_reps = 5;

    // experiment 1
    std::pair<qubit_t, qubit_t> victim_pair{63, 64};
    qubit_t fixed_qubit = 0;
    std::string marked = "11";

    // experiment 2
    std::pair<qubit_t, qubit_t> attacker_pair{0, 108};
    qubit_t sweep_start = 60;
    size_t sweep_count = 10;
};

DeviceTopology resolve_device(const ExperimentConfig& config);
CrosstalkModel resolve_model(const ExperimentConfig& config);

void cmd_experiment1(const ExperimentConfig& config);
void cmd_experiment2(const ExperimentConfig& config);
void cmd_experiment3(const ExperimentConfig& config);
void cmd_experiment4(const ExperimentConfig& config);

struct ReconArgs {
    ExperimentConfig config;
    std::string scenario = "exhaustive";  // or "path-informed"
};
void cmd_recon(const ReconArgs& args);

void cmd_attack(const ExperimentConfig& config);

struct LearnArgs {
    ExperimentConfig config;
    std::string mode = "size";  // or "value"
};
void cmd_learn(const LearnArgs& args);

struct PredictArgs {
    ExperimentConfig config;
    std::string dataset_path;
    std::optional<std::string> label;          // fresh victim run for this label
    std::optional<std::string> observed_path;  // or: load a stored signature
    std::optional<size_t> k;
    std::string mode = "size";
};
void cmd_predict(const PredictArgs& args);

struct PathQueryArgs {
    ExperimentConfig config;
    qubit_t src = 0;
    qubit_t dst = 108;
    std::vector<qubit_t> victim;  // optional intersection check
};
void cmd_path_query(const PathQueryArgs& args);

}  // namespace xtalk::cli
