#include <complex>

#include "doctest.h"
#include "oracles.hpp"
#include "xtalk/errors.hpp"
#include "xtalk/router.hpp"
#include "xtalk/rng.hpp"
#include "xtalk/statevector.hpp"
#include "xtalk/topology.hpp"

using namespace xtalk;

namespace {

DeviceTopology make_topology(int n, const std::vector<std::pair<int, int>>& edge_list) {
    std::vector<Edge> edges;
    for (const auto& [a, b] : edge_list) {
        edges.emplace_back(static_cast<qubit_t>(a), static_cast<qubit_t>(b));
    }
    CalibrationTable cal;
    cal.readout_error.assign(n, 0.0);
    cal.idle_flip_rate.assign(n, 0.0);
    for (const Edge& e : edges) cal.two_qubit_gate_error.emplace(e, 0.0);
    return DeviceTopology(static_cast<qubit_t>(n), edges, cal);
}

DeviceTopology line4() { return make_topology(4, {{0, 1}, {1, 2}, {2, 3}}); }

// Applies the routed circuit to |x (logical basis), a (ancillas)> and checks
// the result equals (U_logical |x>) embedded at the layout positions with the
// ancilla bits untouched. Covers every logical basis state.
void check_unitary_preserved(const LogicalCircuit& circuit, const DeviceTopology& topo,
                             const Layout& layout, uint64_t seed, uint64_t ancilla_bits) {
    const RoutedCircuit routed = transpile(circuit, topo, layout, seed);
    const uint32_t n_log = circuit.num_qubits;
    const uint32_t n_phys = topo.num_qubits();

    for (uint64_t x = 0; x < (uint64_t{1} << n_log); x++) {
        // Logical side.
        StateVector logical(n_log);
        for (uint32_t q = 0; q < n_log; q++) {
            if ((x >> q) & 1) logical.apply(Gate::x(q));
        }
        for (const Gate& g : circuit.gates) logical.apply(g);

        // Physical side: embed x at the layout positions, ancillas as given.
        uint64_t phys_index = 0;
        for (uint32_t q = 0; q < n_phys; q++) {
            bool in_layout = false;
            for (uint32_t l = 0; l < n_log; l++) {
                if (layout.physical(l) == q) {
                    if ((x >> l) & 1) phys_index |= uint64_t{1} << q;
                    in_layout = true;
                }
            }
            if (!in_layout && ((ancilla_bits >> q) & 1)) phys_index |= uint64_t{1} << q;
        }
        StateVector physical(n_phys);
        {
            // Prepare the embedded basis state.
            for (uint32_t q = 0; q < n_phys; q++) {
                if ((phys_index >> q) & 1) physical.apply(Gate::x(q));
            }
        }
        for (const PhysicalGate& g : routed.physical_gates) {
            physical.apply({g.kind, g.q0, g.q1});
        }

        // Compare amplitudes: physical amplitude at (embedded y, ancillas)
        // must equal logical amplitude at y; everything else must be zero.
        const auto& log_amps = logical.amplitudes();
        const auto& phys_amps = physical.amplitudes();
        for (uint64_t p = 0; p < phys_amps.size(); p++) {
            // Extract logical bits and remainder from the physical index.
            uint64_t y = 0;
            uint64_t rest = p;
            for (uint32_t l = 0; l < n_log; l++) {
                const qubit_t pos = layout.physical(l);
                if ((p >> pos) & 1) y |= uint64_t{1} << l;
                rest &= ~(uint64_t{1} << pos);
            }
            uint64_t expected_rest = phys_index;
            for (uint32_t l = 0; l < n_log; l++) {
                expected_rest &= ~(uint64_t{1} << layout.physical(l));
            }
            const std::complex<double> want =
                rest == expected_rest ? log_amps[y] : std::complex<double>{0.0, 0.0};
            CHECK(std::abs(phys_amps[p] - want) < 1e-10);
        }
    }
}

LogicalCircuit random_circuit(uint32_t num_qubits, int num_gates, Rng& rng) {
    LogicalCircuit c;
    c.num_qubits = num_qubits;
    for (int i = 0; i < num_gates; i++) {
        const uint32_t q0 = static_cast<uint32_t>(rng.next_below(num_qubits));
        uint32_t q1 = static_cast<uint32_t>(rng.next_below(num_qubits));
        while (q1 == q0) q1 = static_cast<uint32_t>(rng.next_below(num_qubits));
        switch (rng.next_below(5)) {
            case 0: c.gates.push_back(Gate::h(q0)); break;
            case 1: c.gates.push_back(Gate::x(q0)); break;
            case 2: c.gates.push_back(Gate::cz(q0, q1)); break;
            case 3: c.gates.push_back(Gate::cnot(q0, q1)); break;
            case 4: c.gates.push_back(Gate::swap(q0, q1)); break;
        }
    }
    return c;
}

}  // namespace

TEST_CASE("swap_path on trivial cases") {
    const DeviceTopology hex = build_heavy_hex(127);
    SUBCASE("adjacent pair needs no intermediate hops") {
        const SwapPath p = swap_path(hex, 63, 64, 0);
        CHECK(p.nodes == std::vector<qubit_t>{63, 64});
    }
    SUBCASE("unique path on a line") {
        const DeviceTopology line = line4();
        const SwapPath p = swap_path(line, 0, 3, 0);
        CHECK(p.nodes == std::vector<qubit_t>{0, 1, 2, 3});
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(swap_path(hex, 5, 5, 0), SameQubit);
        CHECK_THROWS_AS(swap_path(hex, 0, 127, 0), IndexOutOfRange);
    }
}

TEST_CASE("seed-0 swap_path is the lexicographic shortest path") {
    const DeviceTopology hex = build_heavy_hex(127);
    const oracle::HeavyHexRef ref;
    std::vector<std::vector<int>> adj(127);
    for (const auto& [a, b] : ref.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& nbs : adj) std::sort(nbs.begin(), nbs.end());

    for (const auto& [src, dst] : std::vector<std::pair<int, int>>{
             {0, 108}, {0, 69}, {0, 126}, {63, 0}, {108, 0}, {12, 94}}) {
        const SwapPath p = swap_path(hex, src, dst, 0);
        const std::vector<int> want = oracle::lexicographic_shortest_path(adj, src, dst);
        REQUIRE(p.nodes.size() == want.size());
        for (size_t i = 0; i < want.size(); i++) {
            CHECK(p.nodes[i] == static_cast<qubit_t>(want[i]));
        }
        // Node count is hop distance + 1.
        CHECK(p.nodes.size() == hex.hop_distance(src, dst) + 1);
        // Consecutive nodes are coupling edges; no repeats.
        for (size_t i = 1; i < p.nodes.size(); i++) {
            CHECK(hex.has_edge(p.nodes[i - 1], p.nodes[i]));
        }
        auto sorted = p.nodes;
        std::sort(sorted.begin(), sorted.end());
        CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    }
}

TEST_CASE("swap_path determinism and seed sensitivity") {
    const DeviceTopology hex = build_heavy_hex(127);
    const SwapPath a = swap_path(hex, 0, 108, 0);
    const SwapPath b = swap_path(hex, 0, 108, 0);
    CHECK(a.nodes == b.nodes);

    // Other seeds still produce valid shortest paths.
    for (uint64_t seed : {1ULL, 7ULL, 42ULL}) {
        const SwapPath p = swap_path(hex, 0, 108, seed);
        CHECK(p.nodes.size() == hex.hop_distance(0, 108) + 1);
        for (size_t i = 1; i < p.nodes.size(); i++) {
            CHECK(hex.has_edge(p.nodes[i - 1], p.nodes[i]));
        }
        const SwapPath again = swap_path(hex, 0, 108, seed);
        CHECK(p.nodes == again.nodes);
    }
}

TEST_CASE("transpile keeps adjacent gates in place") {
    const DeviceTopology hex = build_heavy_hex(127);
    LogicalCircuit c;
    c.num_qubits = 2;
    c.gates = {Gate::cnot(0, 1)};
    const RoutedCircuit routed = transpile(c, hex, Layout({63, 64}), 0);
    REQUIRE(routed.physical_gates.size() == 1);
    CHECK(routed.physical_gates[0].kind == GateKind::CNOT);
    CHECK(routed.physical_gates[0].q0 == 63);
    CHECK(routed.physical_gates[0].q1 == 64);
    REQUIRE(routed.swap_paths.size() == 1);
    CHECK(routed.swap_paths[0].nodes == std::vector<qubit_t>{63, 64});
}

TEST_CASE("transpile expands a distant CNOT into swap in, gate, swap out") {
    const DeviceTopology line = line4();
    LogicalCircuit c;
    c.num_qubits = 2;
    c.gates = {Gate::cnot(0, 1)};
    const RoutedCircuit routed = transpile(c, line, Layout({0, 3}), 0);

    REQUIRE(routed.physical_gates.size() == 5);  // 2 swaps in, CNOT, 2 swaps out
    CHECK(routed.physical_gates[0].kind == GateKind::SWAP);
    CHECK(routed.physical_gates[1].kind == GateKind::SWAP);
    CHECK(routed.physical_gates[2].kind == GateKind::CNOT);
    CHECK(routed.physical_gates[2].q0 == 2);
    CHECK(routed.physical_gates[2].q1 == 3);
    CHECK(routed.physical_gates[3].kind == GateKind::SWAP);
    CHECK(routed.physical_gates[4].kind == GateKind::SWAP);
    REQUIRE(routed.swap_paths.size() == 1);
    CHECK(routed.swap_paths[0].nodes == std::vector<qubit_t>{0, 1, 2, 3});

    // Every physical two-qubit gate acts on a coupling edge.
    for (const PhysicalGate& g : routed.physical_gates) {
        if (is_two_qubit(g.kind)) CHECK(line.has_edge(g.q0, g.q1));
    }
}

TEST_CASE("transpile errors") {
    const DeviceTopology line = line4();
    LogicalCircuit c;
    c.num_qubits = 2;
    c.gates = {Gate::cnot(0, 1)};
    CHECK_THROWS_AS(transpile(c, line, Layout({0}), 0), LayoutIncomplete);
    CHECK_THROWS_AS(transpile(c, line, Layout({0, 9}), 0), IndexOutOfRange);
}

TEST_CASE("routed circuits preserve the unitary up to the layout embedding") {
    const DeviceTopology line = line4();
    LogicalCircuit c;
    c.num_qubits = 2;
    c.gates = {Gate::h(0), Gate::cnot(0, 1), Gate::z(1)};
    check_unitary_preserved(c, line, Layout({0, 3}), 0, 0);
    check_unitary_preserved(c, line, Layout({0, 3}), 0, 0b0110);
    check_unitary_preserved(c, line, Layout({3, 0}), 0, 0b0010);
}

TEST_CASE("unitary preservation on random circuits over random graphs") {
    Rng rng(20240811);
    for (int trial = 0; trial < 25; trial++) {
        const int n_phys = 6 + static_cast<int>(rng.next_below(5));
        const auto edges = oracle::random_connected_graph(n_phys, n_phys / 2, 1000 + trial);
        const DeviceTopology topo = make_topology(n_phys, edges);

        const uint32_t n_log = 2 + static_cast<uint32_t>(rng.next_below(3));
        const LogicalCircuit c = random_circuit(n_log, 6, rng);

        // Random injective layout.
        std::vector<qubit_t> all(n_phys);
        for (int q = 0; q < n_phys; q++) all[q] = static_cast<qubit_t>(q);
        for (size_t i = all.size() - 1; i > 0; i--) {
            std::swap(all[i], all[rng.next_below(i + 1)]);
        }
        all.resize(n_log);

        const uint64_t ancillas = rng.next_u64() & ((uint64_t{1} << n_phys) - 1);
        check_unitary_preserved(c, topo, Layout(all), trial % 3, ancillas);
    }
}

TEST_CASE("routed attacker CNOT to a distant qubit records a long path") {
    const DeviceTopology hex = build_heavy_hex(127);
    const RoutedCircuit routed = transpile(attacker_cnot(), hex, Layout({0, 69}), 0);
    REQUIRE(routed.swap_paths.size() == 1);
    CHECK(routed.swap_paths[0].nodes.size() >= 4);  // at least 2 intermediate hops
    CHECK(routed.swap_paths[0].nodes.front() == 0);
    CHECK(routed.swap_paths[0].nodes.back() == 69);
}

TEST_CASE("path_intersects") {
    const DeviceTopology hex = build_heavy_hex(127);
    const SwapPath path = swap_path(hex, 0, 108, 0);

    SUBCASE("spec'd victim pairs on the 0-108 path") {
        // On this lattice the seed-0 path crosses row 3 at qubits 64..66.
        const std::vector<qubit_t> hit{66, 67};
        const std::vector<qubit_t> miss{60, 61};
        CHECK(path_intersects(path, hit));
        CHECK_FALSE(path_intersects(path, miss));
    }
    SUBCASE("empty set never intersects") {
        CHECK_FALSE(path_intersects(path, std::vector<qubit_t>{}));
    }
    SUBCASE("endpoints count") {
        CHECK(path_intersects(path, std::vector<qubit_t>{0}));
        CHECK(path_intersects(path, std::vector<qubit_t>{108}));
    }
}

TEST_CASE("fixed 0-108 attacker: sweep intersection block matches the BFS oracle") {
    const DeviceTopology hex = build_heavy_hex(127);
    const SwapPath path = swap_path(hex, 0, 108, 0);

    const oracle::HeavyHexRef ref;
    std::vector<std::vector<int>> adj(127);
    for (const auto& [a, b] : ref.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& nbs : adj) std::sort(nbs.begin(), nbs.end());
    const std::vector<int> want = oracle::lexicographic_shortest_path(adj, 0, 108);
    const std::set<int> on_path(want.begin(), want.end());

    int true_block_start = -1;
    int true_count = 0;
    for (int v = 60; v <= 69; v++) {
        const std::vector<qubit_t> victim{static_cast<qubit_t>(v), static_cast<qubit_t>(v + 1)};
        const bool intersects = path_intersects(path, victim);
        const bool oracle_hit = on_path.count(v) || on_path.count(v + 1);
        CHECK(intersects == oracle_hit);
        if (intersects) {
            if (true_block_start < 0) true_block_start = v;
            true_count++;
        }
    }
    // Contiguous four-pair block, as in the fixed-attacker experiment.
    CHECK(true_count == 4);
    CHECK(true_block_start == 63);
    for (int v = true_block_start; v < true_block_start + true_count; v++) {
        CHECK(path_intersects(path, std::vector<qubit_t>{static_cast<qubit_t>(v),
                                                         static_cast<qubit_t>(v + 1)}));
    }
}
