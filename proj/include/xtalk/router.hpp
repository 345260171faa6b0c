#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "xtalk/circuits.hpp"
#include "xtalk/topology.hpp"

namespace xtalk {

// Physical-qubit chain traversed to bring two distant qubits together.
// Consecutive nodes are coupling edges; length >= 2; no repeated node.
struct SwapPath {
    std::vector<qubit_t> nodes;
    uint64_t seed = 0;

    bool operator==(const SwapPath&) const = default;
};

struct PhysicalGate {
    GateKind kind;
    qubit_t q0;
    qubit_t q1;          // ignored for single-qubit gates and MEASURE
    int32_t path_index;  // index into RoutedCircuit::swap_paths, -1 if none
};

struct RoutedCircuit {
    std::vector<PhysicalGate> physical_gates;
    std::vector<SwapPath> swap_paths;  // one per routed two-qubit logical gate
    Layout layout;
};

// Shortest path from src to dst. Deterministic for fixed (topology, src, dst,
// seed): ties are broken by a seeded preference over next hops, and seed 0
// prefers the lowest-index neighbor at every step. Throws IndexOutOfRange and
// SameQubit.
SwapPath swap_path(const DeviceTopology& topology, qubit_t src, qubit_t dst, uint64_t seed);

// Maps the circuit onto physical qubits and expands each two-qubit gate on
// non-adjacent operands into a SWAP chain along its swap_path, the gate at the
// edge adjacent to the destination, and the reverse chain restoring the
// layout. Adjacent-operand gates record a length-2 path. Throws
// LayoutIncomplete and IndexOutOfRange.
RoutedCircuit transpile(const LogicalCircuit& circuit, const DeviceTopology& topology,
                        const Layout& layout, uint64_t seed);

// True iff any of the qubits is a node of the path (endpoints included).
bool path_intersects(const SwapPath& path, std::span<const qubit_t> qubits);

}  // namespace xtalk
