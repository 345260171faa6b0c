#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "xtalk/circuits.hpp"

namespace xtalk {

// Dense state-vector simulator for small circuits. Basis index bit i holds
// qubit i, so |q1 q0> maps to index (q1<<1)|q0.
class StateVector {
  public:
    explicit StateVector(uint32_t num_qubits);

    uint32_t num_qubits() const { return num_qubits_; }
    const std::vector<std::complex<double>>& amplitudes() const { return amps_; }

    // Applies one gate; MEASURE is a no-op here (handled at readout).
    void apply(const Gate& gate);

    void apply_circuit(const LogicalCircuit& circuit);

    // Marginal measurement distribution over the given qubits, in the given
    // order: bitstring character j is the value of qubits[j]. Outcomes with
    // probability below 1e-15 are dropped.
    std::map<std::string, double> measured_distribution(const std::vector<uint32_t>& qubits) const;

  private:
    uint32_t num_qubits_;
    std::vector<std::complex<double>> amps_;
};

}  // namespace xtalk
