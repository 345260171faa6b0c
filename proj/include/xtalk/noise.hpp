#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "xtalk/circuits.hpp"
#include "xtalk/router.hpp"
#include "xtalk/topology.hpp"

namespace xtalk {

// Parametric spectator-error model. A spectator qubit lying ON a foreign
// SwapPath picks up gamma_path per routed two-qubit gate on that path; a
// spectator at hop distance d >= 1 from a foreign gate's active edge picks up
// gamma_adjacent * decay^(d-1). Contributions compose by independent-OR and
// the accumulated crosstalk is capped at `cap`.
struct CrosstalkModel {
    double gamma_path = 0.02;
    double gamma_adjacent = 0.002;
    double decay = 0.35;
    double cap = 1.0;

    // Profile shipped with the simulator: calibrated so that a Grover victim
    // directly on an attacker's SWAP path lands in the Critical band while
    // victims off the path stay below the No-Attack threshold.
    static CrosstalkModel calibrated_default() { return {}; }

    static CrosstalkModel zero() { return {0.0, 0.0, 1.0, 1.0}; }

    void validate() const;
};

// Loads { "gamma_path": p, "gamma_adjacent": p, "decay": d, "cap": c }.
CrosstalkModel load_noise_profile(const std::string& path);
void save_noise_profile(const CrosstalkModel& model, const std::string& path);

// Per-qubit accumulated flip probability, split into the baseline component
// (calibration noise plus own-tenant gate error) and the crosstalk component
// (foreign gate activity only).
struct FlipProbMap {
    std::vector<double> baseline;
    std::vector<double> crosstalk;

    double total(qubit_t q) const { return 1.0 - (1.0 - baseline[q]) * (1.0 - crosstalk[q]); }
};

struct CountsMap {
    std::map<std::string, uint64_t> counts;
    uint64_t shots = 0;
    uint32_t width = 0;  // measured bits per outcome
};

// Per-listening-qubit count of measured 1s over all shots: the side-channel
// observable.
struct CrosstalkSignature {
    std::vector<qubit_t> listening_qubits;  // ascending physical indices
    std::vector<uint64_t> ones_counts;      // aligned with listening_qubits
    uint64_t shots = 0;

    bool operator==(const CrosstalkSignature&) const = default;
};

// Converts routed multi-tenant gate activity into per-qubit flip
// probabilities. Throws InconsistentRouting when the routed circuits do not
// match the program layouts.
FlipProbMap accumulate_flip_probs(const MultiTenantProgram& program,
                                  std::span<const RoutedCircuit> routed,
                                  const CrosstalkModel& model);

// Samples measurement shots per tenant: the tenant's noiseless output
// distribution (dense state vector up to 12 qubits, otherwise the circuit's
// structural sampler) with each measured bit flipped independently at its
// FlipProbMap probability. Deterministic for a fixed rng_seed. Throws
// TooManyQubits for dense-only circuits beyond 12 qubits.
std::vector<CountsMap> sample_shots(const MultiTenantProgram& program,
                                    const FlipProbMap& flipmap, uint64_t shots,
                                    uint64_t rng_seed);

// Acc0: ratio of shots producing the expected bitstring. Throws
// LengthMismatch when the expected string has the wrong width.
double output_accuracy(const CountsMap& counts, const std::string& expected);

// Sums the measured 1s per listening qubit (ascending physical order).
// Throws MissingQubit when a requested qubit was not measured by the tenant.
CrosstalkSignature signature(const CountsMap& counts, const LogicalCircuit& circuit,
                             const Layout& layout, std::span<const qubit_t> listening_qubits);

}  // namespace xtalk
