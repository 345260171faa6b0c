#include "xtalk/scenarios.hpp"

#include <algorithm>

#include "xtalk/passive_attack.hpp"

namespace xtalk {

std::string shift_label(uint32_t value, uint32_t bits) {
    std::string s(bits, '0');
    for (uint32_t j = 0; j < bits; j++) {
        if ((value >> j) & 1) s[j] = '1';
    }
    return s;
}

LogicalCircuit simon_zero_shift(uint32_t n) {
    LogicalCircuit c;
    c.num_qubits = 2 * n;
    c.hint = {SamplerHint::Kind::SimonNullSpace, std::string(n, '0')};
    for (uint32_t i = 0; i < n; i++) c.gates.push_back(Gate::h(i));
    for (uint32_t i = 0; i < n; i++) c.gates.push_back(Gate::cnot(i, n + i));
    for (uint32_t i = 0; i < n; i++) c.gates.push_back(Gate::h(i));
    for (uint32_t i = 0; i < n; i++) c.gates.push_back(Gate::measure(i));
    return c;
}

Layout spread_simon_layout(const DeviceTopology& device) {
    const Layout spread = allocate_even_victim(device, 14, AllocationScheme::Spread);
    const std::vector<qubit_t>& positions = spread.physical_qubits();

    std::vector<std::pair<uint32_t, qubit_t>> by_eccentricity;
    for (qubit_t p : positions) {
        uint32_t ecc = 0;
        for (qubit_t other : positions) {
            ecc = std::max(ecc, device.hop_distance(p, other));
        }
        by_eccentricity.emplace_back(ecc, p);
    }
    std::sort(by_eccentricity.begin(), by_eccentricity.end());

    // x_0..x_6 take the 7 most central positions, y_0..y_6 the rest.
    std::vector<qubit_t> assignment(14);
    for (size_t i = 0; i < 14; i++) assignment[i] = by_eccentricity[i].second;
    return Layout(assignment);
}

PassiveScenario size_prediction_scenario(const DeviceTopology& device) {
    PassiveScenario scenario;
    scenario.name = "experiment3";
    for (uint32_t size = 2; size <= 64; size += 2) {
        scenario.labels.push_back(std::to_string(size));
    }
    scenario.victim_builder = [&device](const std::string& label) {
        const uint32_t size = static_cast<uint32_t>(std::stoul(label));
        return VictimSpec{simon(std::string(size / 2, '1')),
                          allocate_even_victim(device, size, AllocationScheme::EvenIndices)};
    };
    for (qubit_t q = 1; q < device.num_qubits(); q += 2) scenario.listeners.push_back(q);
    scenario.default_k_grid = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 16, 22, 32, 48, 63};
    scenario.default_matrix_k = {63, 11, 4};
    return scenario;
}

PassiveScenario value_prediction_scenario(const DeviceTopology& device) {
    PassiveScenario scenario;
    scenario.name = "experiment4";
    for (uint32_t v = 0; v < 128; v++) scenario.labels.push_back(shift_label(v, 7));
    const Layout layout = spread_simon_layout(device);
    scenario.victim_builder = [layout](const std::string& label) {
        if (label.find('1') == std::string::npos) {
            return VictimSpec{simon_zero_shift(7), layout};
        }
        return VictimSpec{simon(label), layout};
    };
    const std::vector<qubit_t> fp = layout.footprint();
    for (qubit_t q = 0; q < device.num_qubits(); q++) {
        if (!std::binary_search(fp.begin(), fp.end(), q)) scenario.listeners.push_back(q);
    }
    scenario.default_k_grid = {1, 2, 4, 8, 12, 16, 22, 30, 40, 52, 62, 80, 96, 113};
    scenario.default_matrix_k = {22};
    return scenario;
}

}  // namespace xtalk
