#include "xtalk/active_attack.hpp"

#include <algorithm>
#include <cmath>

#include "xtalk/errors.hpp"
#include "xtalk/parallel.hpp"
#include "xtalk/rng.hpp"

namespace xtalk {

std::string severity_name(SeverityClass severity) {
    switch (severity) {
        case SeverityClass::NoAttack: return "No Attack";
        case SeverityClass::Minor: return "Minor";
        case SeverityClass::Moderate: return "Moderate";
        case SeverityClass::Severe: return "Severe";
        case SeverityClass::Critical: return "Critical";
    }
    return "?";
}

SeverityClass classify_severity(double deviation_pct) {
    if (!(deviation_pct >= 0.0 && deviation_pct <= 100.0)) {
        throw OutOfRange("deviation " + std::to_string(deviation_pct) + " outside [0,100]");
    }
    if (deviation_pct < 20.0) return SeverityClass::NoAttack;
    if (deviation_pct < 40.0) return SeverityClass::Minor;
    if (deviation_pct < 60.0) return SeverityClass::Moderate;
    if (deviation_pct < 80.0) return SeverityClass::Severe;
    return SeverityClass::Critical;
}

namespace {

void check_disjoint(const std::vector<qubit_t>& victim_fp,
                    std::pair<qubit_t, qubit_t> attacker_pair) {
    if (attacker_pair.first == attacker_pair.second) {
        throw SameQubit("attacker qubits must differ");
    }
    for (qubit_t q : victim_fp) {
        if (q == attacker_pair.first || q == attacker_pair.second) {
            throw FootprintConflict("attacker qubit " + std::to_string(q) +
                                    " overlaps the victim footprint");
        }
    }
}

}  // namespace

AttackReport execute_active(const VictimSpec& victim, std::pair<qubit_t, qubit_t> attacker_pair,
                            const DeviceTopology& device, const CrosstalkModel& model,
                            uint64_t shots, Seeds seeds) {
    const std::vector<qubit_t> victim_fp = victim.layout.footprint();
    check_disjoint(victim_fp, attacker_pair);
    if (!victim.circuit.expected_output.has_value()) {
        throw ValidationError("victim circuit declares no expected output");
    }

    Layout attacker_layout({attacker_pair.first, attacker_pair.second});
    RunResult run = run_tenants(device, model,
                                {{victim.circuit, victim.layout},
                                 {attacker_cnot(), attacker_layout}},
                                seeds, shots);

    AttackReport report;
    report.victim_qubits = victim.layout.physical_qubits();
    report.attacker_pair = attacker_pair;
    report.attacker_path = run.routed[1].swap_paths.at(0);
    report.acc0 = output_accuracy(run.counts[0], *victim.circuit.expected_output);
    report.deviation_pct = (1.0 - report.acc0) * 100.0;
    report.severity = classify_severity(report.deviation_pct);
    report.intersected = path_intersects(report.attacker_path, victim_fp);
    report.shots = shots;
    report.seeds = seeds;
    return report;
}

namespace {

// Probes one candidate pair with a seed derived from the pair, so results are
// independent of probe order and worker count.
AttackOption probe_pair(const VictimSpec& victim, std::pair<qubit_t, qubit_t> pair,
                        const DeviceTopology& device, const CrosstalkModel& model, uint64_t shots,
                        Seeds seeds) {
    Seeds probe_seeds{seeds.transpile,
                      derive_seed(seeds.rng, "recon-pair",
                                  (static_cast<uint64_t>(pair.first) << 32) | pair.second)};
    const AttackReport report = execute_active(victim, pair, device, model, shots, probe_seeds);
    return {pair, report.acc0, report.deviation_pct, report.severity};
}

std::vector<qubit_t> candidate_second_qubits(const VictimSpec& victim, qubit_t fixed,
                                             const DeviceTopology& device) {
    const std::vector<qubit_t> victim_fp = victim.layout.footprint();
    if (std::find(victim_fp.begin(), victim_fp.end(), fixed) != victim_fp.end()) {
        throw FootprintConflict("fixed attacker qubit lies inside the victim footprint");
    }
    std::vector<qubit_t> candidates;
    for (qubit_t q = 0; q < device.num_qubits(); q++) {
        if (q == fixed) continue;
        if (std::binary_search(victim_fp.begin(), victim_fp.end(), q)) continue;
        candidates.push_back(q);
    }
    return candidates;
}

void sort_options(std::vector<AttackOption>& options) {
    std::sort(options.begin(), options.end(), [](const AttackOption& a, const AttackOption& b) {
        if (a.deviation_pct != b.deviation_pct) return a.deviation_pct > b.deviation_pct;
        return a.attacker_pair.second < b.attacker_pair.second;
    });
}

}  // namespace

ReconResult recon_exhaustive(const VictimSpec& victim, qubit_t fixed_attacker_qubit,
                             const DeviceTopology& device, const CrosstalkModel& model,
                             uint64_t shots, Seeds seeds) {
    const std::vector<qubit_t> candidates =
        candidate_second_qubits(victim, fixed_attacker_qubit, device);

    std::vector<AttackOption> options(candidates.size());
    parallel_for(candidates.size(), [&](size_t i) {
        options[i] = probe_pair(victim, {fixed_attacker_qubit, candidates[i]}, device, model,
                                shots, seeds);
    });
    sort_options(options);
    return {std::move(options), candidates.size()};
}

ReconResult recon_path_informed(const VictimSpec& victim, qubit_t fixed_attacker_qubit,
                                const DeviceTopology& device, const CrosstalkModel& model,
                                uint64_t shots, Seeds seeds) {
    const std::vector<qubit_t> victim_fp = victim.layout.footprint();
    const std::vector<qubit_t> candidates =
        candidate_second_qubits(victim, fixed_attacker_qubit, device);

    // Filter on SWAP-path intersection before simulating anything.
    std::vector<qubit_t> hits;
    for (qubit_t q : candidates) {
        const SwapPath path = swap_path(device, fixed_attacker_qubit, q, seeds.transpile);
        if (path_intersects(path, victim_fp)) hits.push_back(q);
    }

    std::vector<AttackOption> options(hits.size());
    parallel_for(hits.size(), [&](size_t i) {
        options[i] =
            probe_pair(victim, {fixed_attacker_qubit, hits[i]}, device, model, shots, seeds);
    });
    sort_options(options);
    return {std::move(options), hits.size()};
}

std::vector<AttackReport> sweep_victim_positions(
        std::pair<qubit_t, qubit_t> attacker_pair, const LogicalCircuit& victim_circuit,
        std::span<const std::pair<qubit_t, qubit_t>> positions, const DeviceTopology& device,
        const CrosstalkModel& model, uint64_t shots, Seeds seeds) {
    for (const auto& [a, b] : positions) {
        if (!device.has_edge(a, b)) {
            throw NotAnEdge("victim position (" + std::to_string(a) + "," + std::to_string(b) +
                            ") is not a coupling edge");
        }
    }

    std::vector<AttackReport> reports(positions.size());
    parallel_for(positions.size(), [&](size_t i) {
        const auto [a, b] = positions[i];
        VictimSpec victim{victim_circuit, Layout({a, b})};
        Seeds pos_seeds{seeds.transpile, derive_seed(seeds.rng, "sweep-position", i)};
        reports[i] = execute_active(victim, attacker_pair, device, model, shots, pos_seeds);
    });
    return reports;
}

}  // namespace xtalk
