#include "xtalk/statevector.hpp"

#include <cmath>

#include "xtalk/errors.hpp"

namespace xtalk {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

StateVector::StateVector(uint32_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits == 0 || num_qubits > 24) {
        throw TooManyQubits("dense simulation supports 1..24 qubits, got " +
                            std::to_string(num_qubits));
    }
    amps_.assign(size_t{1} << num_qubits, {0.0, 0.0});
    amps_[0] = {1.0, 0.0};
}

void StateVector::apply(const Gate& gate) {
    const size_t dim = amps_.size();
    const size_t bit0 = size_t{1} << gate.q0;
    switch (gate.kind) {
        case GateKind::H:
            for (size_t i = 0; i < dim; i++) {
                if (i & bit0) continue;
                const auto a = amps_[i];
                const auto b = amps_[i | bit0];
                amps_[i] = (a + b) * kInvSqrt2;
                amps_[i | bit0] = (a - b) * kInvSqrt2;
            }
            break;
        case GateKind::X:
            for (size_t i = 0; i < dim; i++) {
                if (!(i & bit0)) std::swap(amps_[i], amps_[i | bit0]);
            }
            break;
        case GateKind::Z:
            for (size_t i = 0; i < dim; i++) {
                if (i & bit0) amps_[i] = -amps_[i];
            }
            break;
        case GateKind::CZ: {
            const size_t bit1 = size_t{1} << gate.q1;
            for (size_t i = 0; i < dim; i++) {
                if ((i & bit0) && (i & bit1)) amps_[i] = -amps_[i];
            }
            break;
        }
        case GateKind::CNOT: {
            const size_t bit1 = size_t{1} << gate.q1;
            for (size_t i = 0; i < dim; i++) {
                if ((i & bit0) && !(i & bit1)) std::swap(amps_[i], amps_[i | bit1]);
            }
            break;
        }
        case GateKind::SWAP: {
            const size_t bit1 = size_t{1} << gate.q1;
            for (size_t i = 0; i < dim; i++) {
                if ((i & bit0) && !(i & bit1)) std::swap(amps_[i], amps_[(i & ~bit0) | bit1]);
            }
            break;
        }
        case GateKind::MEASURE:
            break;
    }
}

void StateVector::apply_circuit(const LogicalCircuit& circuit) {
    for (const Gate& g : circuit.gates) apply(g);
}

std::map<std::string, double> StateVector::measured_distribution(
        const std::vector<uint32_t>& qubits) const {
    std::map<std::string, double> dist;
    std::string key(qubits.size(), '0');
    for (size_t i = 0; i < amps_.size(); i++) {
        const double p = std::norm(amps_[i]);
        if (p < 1e-15) continue;
        for (size_t j = 0; j < qubits.size(); j++) {
            key[j] = (i >> qubits[j]) & 1 ? '1' : '0';
        }
        dist[key] += p;
    }
    return dist;
}

}  // namespace xtalk
