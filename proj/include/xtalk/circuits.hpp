#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xtalk/topology.hpp"

namespace xtalk {

enum class GateKind { H, X, Z, CZ, CNOT, SWAP, MEASURE };

bool is_two_qubit(GateKind kind);
std::string gate_name(GateKind kind);

struct Gate {
    GateKind kind;
    uint32_t q0;
    uint32_t q1;  // ignored for single-qubit gates and MEASURE

    static Gate h(uint32_t q) { return {GateKind::H, q, 0}; }
    static Gate x(uint32_t q) { return {GateKind::X, q, 0}; }
    static Gate z(uint32_t q) { return {GateKind::Z, q, 0}; }
    static Gate cz(uint32_t a, uint32_t b) { return {GateKind::CZ, a, b}; }
    static Gate cnot(uint32_t control, uint32_t target) { return {GateKind::CNOT, control, target}; }
    static Gate swap(uint32_t a, uint32_t b) { return {GateKind::SWAP, a, b}; }
    static Gate measure(uint32_t q) { return {GateKind::MEASURE, q, 0}; }

    bool operator==(const Gate&) const = default;
};

// Shortcut description of the noiseless output distribution, set by the
// constructors below so circuits too large for dense simulation can still be
// sampled exactly.
struct SamplerHint {
    enum class Kind { None, AllZeros, SimonNullSpace };
    Kind kind = Kind::None;
    std::string shift;  // SimonNullSpace only
};

struct LogicalCircuit {
    uint32_t num_qubits = 0;
    std::vector<Gate> gates;
    std::optional<std::string> expected_output;
    SamplerHint hint;

    // Qubits carrying a MEASURE gate, ascending. Output bitstring character j
    // is the value of the j-th measured qubit in this order.
    std::vector<uint32_t> measured_qubits() const;

    // Validates operand ranges and that MEASURE gates are terminal per qubit.
    void validate() const;
};

// Logical-to-physical qubit assignment. Injective.
class Layout {
  public:
    Layout() = default;
    explicit Layout(std::vector<qubit_t> physical);

    uint32_t num_logical() const { return static_cast<uint32_t>(physical_.size()); }
    qubit_t physical(uint32_t logical) const;
    const std::vector<qubit_t>& physical_qubits() const { return physical_; }

    // Footprint as a sorted vector of physical indices.
    std::vector<qubit_t> footprint() const;

    void check_fits(const DeviceTopology& topo) const;

  private:
    std::vector<qubit_t> physical_;
};

struct MultiTenantProgram {
    struct Tenant {
        LogicalCircuit circuit;
        Layout layout;
    };
    std::vector<Tenant> tenants;
    const DeviceTopology* device = nullptr;

    // Cross-tenant round-robin order by gate index: t0.g0, t1.g0, ..., t0.g1, ...
    std::vector<std::pair<size_t, size_t>> interleaved_gates() const;
};

// Standard one-iteration two-qubit Grover circuit whose noiseless output is
// `marked` with probability 1. Throws InvalidBitstring unless marked is a
// 2-bit string.
LogicalCircuit grover_2q(const std::string& marked);

// Simon's algorithm for hidden shift s (|s| input qubits, |s| ancilla).
// Oracle: copy-CNOTs x_i -> y_i, then CNOT fan-out from the lowest set bit of
// s onto every y_j with s_j = 1. Noiseless outcomes z satisfy z.s = 0 (mod 2).
// Throws EmptyShift / ZeroShift / InvalidBitstring.
LogicalCircuit simon(const std::string& hidden_shift);

// Single CNOT followed by measurement; expected output "00".
LogicalCircuit attacker_cnot();

// k measure-only qubits; expected output all zeros. Throws InvalidSize for k=0.
LogicalCircuit listening_circuit(uint32_t k);

// Composes tenants onto one device. Throws OverlapError when physical
// footprints intersect and DeviceOverflow when a layout exceeds the device.
MultiTenantProgram merge_tenants(std::vector<MultiTenantProgram::Tenant> tenants,
                                 const DeviceTopology& device);

// Circuit JSON for CLI custom victims:
//   { "num_qubits": n, "gates": [["cnot",0,1],...], "expected": "11" }
LogicalCircuit load_circuit(const std::string& path);

}  // namespace xtalk
