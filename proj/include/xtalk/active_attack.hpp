#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "xtalk/circuits.hpp"
#include "xtalk/noise.hpp"
#include "xtalk/pipeline.hpp"
#include "xtalk/router.hpp"
#include "xtalk/topology.hpp"

namespace xtalk {

// Deviation bands, half-open at the lower bound: [0,20) NoAttack, [20,40)
// Minor, [40,60) Moderate, [60,80) Severe, [80,100] Critical.
enum class SeverityClass { NoAttack, Minor, Moderate, Severe, Critical };

std::string severity_name(SeverityClass severity);

// Throws OutOfRange unless 0 <= deviation_pct <= 100.
SeverityClass classify_severity(double deviation_pct);

struct AttackOption {
    std::pair<qubit_t, qubit_t> attacker_pair;
    double acc0 = 0.0;
    double deviation_pct = 0.0;
    SeverityClass severity = SeverityClass::NoAttack;
};

struct ReconResult {
    std::vector<AttackOption> options;  // sorted descending by deviation
    size_t searched_pairs = 0;          // pairs actually simulated
};

struct AttackReport {
    std::vector<qubit_t> victim_qubits;
    std::pair<qubit_t, qubit_t> attacker_pair;
    SwapPath attacker_path;
    double acc0 = 0.0;
    double deviation_pct = 0.0;
    SeverityClass severity = SeverityClass::NoAttack;
    bool intersected = false;
    uint64_t shots = 0;
    Seeds seeds;
};

// Runs the attacker's single CNOT concurrently with the victim at the given
// physical pair and reports the victim's output accuracy. Throws
// FootprintConflict when footprints overlap.
AttackReport execute_active(const VictimSpec& victim, std::pair<qubit_t, qubit_t> attacker_pair,
                            const DeviceTopology& device, const CrosstalkModel& model,
                            uint64_t shots, Seeds seeds);

// Scenario 1: probes every second-qubit position (all device qubits except the
// victim's and the fixed qubit) with the full route + noise + sample pipeline.
ReconResult recon_exhaustive(const VictimSpec& victim, qubit_t fixed_attacker_qubit,
                             const DeviceTopology& device, const CrosstalkModel& model,
                             uint64_t shots, Seeds seeds);

// Scenario 2: filters candidates to pairs whose SWAP path intersects the
// victim before any simulation, then probes only those.
ReconResult recon_path_informed(const VictimSpec& victim, qubit_t fixed_attacker_qubit,
                                const DeviceTopology& device, const CrosstalkModel& model,
                                uint64_t shots, Seeds seeds);

// Fixed attacker, victim circuit placed at each adjacent physical pair in
// turn. Throws NotAnEdge / FootprintConflict.
std::vector<AttackReport> sweep_victim_positions(std::pair<qubit_t, qubit_t> attacker_pair,
                                                 const LogicalCircuit& victim_circuit,
                                                 std::span<const std::pair<qubit_t, qubit_t>> positions,
                                                 const DeviceTopology& device,
                                                 const CrosstalkModel& model, uint64_t shots,
                                                 Seeds seeds);

}  // namespace xtalk
