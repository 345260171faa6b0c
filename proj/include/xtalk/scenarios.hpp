#pragma once

#include <functional>
#include <string>
#include <vector>

#include "xtalk/circuits.hpp"
#include "xtalk/pipeline.hpp"
#include "xtalk/topology.hpp"

namespace xtalk {

// Canonical passive-attack experiment definitions, shared by the CLI and the
// acceptance suite.
struct PassiveScenario {
    std::string name;
    std::vector<std::string> labels;
    std::function<VictimSpec(const std::string&)> victim_builder;
    std::vector<qubit_t> listeners;
    std::vector<size_t> default_k_grid;
    std::vector<size_t> default_matrix_k;
};

// Bit j of value becomes character j.
std::string shift_label(uint32_t value, uint32_t bits);

// Copy-only oracle for the all-zero shift label: f(x) = x, so the input
// register measures uniformly over every bitstring.
LogicalCircuit simon_zero_shift(uint32_t n);

// Maps the Simon registers onto the 14 spread positions with the input
// register on the most central ones. The fan-out CNOTs all leave from an
// input qubit, so central sources make the routed paths diverge immediately
// and every shift value leaves a distinct footprint on the listeners.
Layout spread_simon_layout(const DeviceTopology& device);

// Circuit-size prediction: sizes 2..64 step 2 on even indices, listeners on
// the 63 odd indices.
PassiveScenario size_prediction_scenario(const DeviceTopology& device);

// Hidden-shift value prediction: all 2^7 shifts of a 14-qubit Simon victim on
// the spread positions, listeners on the remaining 113 qubits.
PassiveScenario value_prediction_scenario(const DeviceTopology& device);

}  // namespace xtalk
