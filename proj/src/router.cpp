#include "xtalk/router.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "xtalk/errors.hpp"
#include "xtalk/rng.hpp"

namespace xtalk {

SwapPath swap_path(const DeviceTopology& topology, qubit_t src, qubit_t dst, uint64_t seed) {
    const qubit_t n = topology.num_qubits();
    if (src >= n || dst >= n) {
        throw IndexOutOfRange("swap_path endpoint out of range");
    }
    if (src == dst) throw SameQubit("swap_path endpoints must differ");

    // Distance-to-destination field; any neighbor one step closer lies on a
    // shortest path.
    std::vector<uint32_t> dist(n, UINT32_MAX);
    std::deque<qubit_t> frontier{dst};
    dist[dst] = 0;
    while (!frontier.empty()) {
        qubit_t q = frontier.front();
        frontier.pop_front();
        for (qubit_t nb : topology.neighbors(q)) {
            if (dist[nb] == UINT32_MAX) {
                dist[nb] = dist[q] + 1;
                frontier.push_back(nb);
            }
        }
    }

    const uint64_t mix =
        derive_seed(seed, "swap_path", (static_cast<uint64_t>(src) << 32) | dst);

    SwapPath path;
    path.seed = seed;
    path.nodes.reserve(dist[src] + 1);
    path.nodes.push_back(src);
    qubit_t cur = src;
    while (cur != dst) {
        qubit_t best = n;
        uint64_t best_key = std::numeric_limits<uint64_t>::max();
        for (qubit_t nb : topology.neighbors(cur)) {
            if (dist[nb] + 1 != dist[cur]) continue;
            // Neighbors are visited in ascending order, so seed 0 picks the
            // lowest-index next hop.
            const uint64_t key = seed == 0 ? nb : splitmix64(mix ^ nb);
            if (key < best_key) {
                best_key = key;
                best = nb;
            }
        }
        cur = best;
        path.nodes.push_back(cur);
    }
    return path;
}

RoutedCircuit transpile(const LogicalCircuit& circuit, const DeviceTopology& topology,
                        const Layout& layout, uint64_t seed) {
    if (layout.num_logical() < circuit.num_qubits) {
        throw LayoutIncomplete("layout covers " + std::to_string(layout.num_logical()) +
                               " qubits, circuit uses " + std::to_string(circuit.num_qubits));
    }
    for (qubit_t p : layout.physical_qubits()) {
        if (p >= topology.num_qubits()) {
            throw IndexOutOfRange("layout physical qubit " + std::to_string(p) +
                                  " out of range");
        }
    }

    RoutedCircuit routed;
    routed.layout = layout;

    for (const Gate& g : circuit.gates) {
        if (!is_two_qubit(g.kind)) {
            routed.physical_gates.push_back({g.kind, layout.physical(g.q0), 0, -1});
            continue;
        }

        const qubit_t src = layout.physical(g.q0);
        const qubit_t dst = layout.physical(g.q1);
        if (topology.has_edge(src, dst)) {
            const int32_t idx = static_cast<int32_t>(routed.swap_paths.size());
            routed.swap_paths.push_back({{src, dst}, seed});
            routed.physical_gates.push_back({g.kind, src, dst, idx});
            continue;
        }

        SwapPath path = swap_path(topology, src, dst, seed);
        const int32_t idx = static_cast<int32_t>(routed.swap_paths.size());
        const size_t last = path.nodes.size() - 1;

        // Walk the source operand to the edge adjacent to dst, apply the gate
        // there, then walk it back so the layout is restored.
        for (size_t i = 0; i + 2 <= last; i++) {
            routed.physical_gates.push_back(
                {GateKind::SWAP, path.nodes[i], path.nodes[i + 1], idx});
        }
        routed.physical_gates.push_back({g.kind, path.nodes[last - 1], path.nodes[last], idx});
        for (size_t i = last - 1; i-- > 0;) {
            routed.physical_gates.push_back(
                {GateKind::SWAP, path.nodes[i], path.nodes[i + 1], idx});
        }
        routed.swap_paths.push_back(std::move(path));
    }
    return routed;
}

bool path_intersects(const SwapPath& path, std::span<const qubit_t> qubits) {
    for (qubit_t q : qubits) {
        if (std::find(path.nodes.begin(), path.nodes.end(), q) != path.nodes.end()) return true;
    }
    return false;
}

}  // namespace xtalk
