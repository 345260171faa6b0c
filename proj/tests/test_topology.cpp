#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "oracles.hpp"
#include "xtalk/errors.hpp"
#include "xtalk/topology.hpp"

using namespace xtalk;

namespace {

DeviceTopology line_graph(qubit_t n) {
    std::vector<Edge> edges;
    for (qubit_t q = 1; q < n; q++) edges.emplace_back(q - 1, q);
    CalibrationTable cal;
    cal.readout_error.assign(n, kDefaultReadoutError);
    cal.idle_flip_rate.assign(n, kDefaultIdleFlipRate);
    for (const Edge& e : edges) cal.two_qubit_gate_error.emplace(e, kDefaultTwoQubitGateError);
    return DeviceTopology(n, edges, cal);
}

std::string write_temp_json(const std::string& name, const std::string& body) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << body;
    return path.string();
}

}  // namespace

TEST_CASE("heavy-hex 127 matches the reference enumeration") {
    const oracle::HeavyHexRef ref;
    REQUIRE(ref.num_qubits == 127);

    const DeviceTopology topo = build_heavy_hex(127);
    CHECK(topo.num_qubits() == 127);
    CHECK(topo.edges().size() == 144);
    CHECK(ref.edges.size() == 144);

    for (const Edge& e : topo.edges()) {
        CHECK(ref.edges.count({static_cast<int>(e.a), static_cast<int>(e.b)}) == 1);
    }

    size_t max_degree = 0;
    for (qubit_t q = 0; q < 127; q++) max_degree = std::max(max_degree, topo.neighbors(q).size());
    CHECK(max_degree == 3);

    CHECK(topo.has_edge(0, 1));
    CHECK_FALSE(topo.has_edge(0, 2));
    CHECK(topo.neighbors(0) == std::vector<qubit_t>{1, 14});

    // Indices the experiments rely on: victim row around 63/64, attacker
    // corner qubits 0 and 108, bottom-right 126.
    CHECK(topo.has_edge(63, 64));
    for (qubit_t q = 60; q < 70; q++) CHECK(topo.has_edge(q, q + 1));
    CHECK(topo.has_edge(107, 108));
    CHECK(topo.has_edge(125, 126));
}

TEST_CASE("heavy-hex is deterministic across builds") {
    const DeviceTopology a = build_heavy_hex(127);
    const DeviceTopology b = build_heavy_hex(127);
    REQUIRE(a.edges().size() == b.edges().size());
    for (size_t i = 0; i < a.edges().size(); i++) {
        CHECK(a.edges()[i] == b.edges()[i]);
    }
}

TEST_CASE("heavy-hex rejects unsupported sizes") {
    CHECK_THROWS_AS(build_heavy_hex(5), UnsupportedSize);
    CHECK_THROWS_AS(build_heavy_hex(0), UnsupportedSize);
    CHECK_THROWS_AS(build_heavy_hex(128), UnsupportedSize);
}

TEST_CASE("neighbors and hop_distance basics") {
    const DeviceTopology line = line_graph(3);
    CHECK(line.neighbors(1) == std::vector<qubit_t>{0, 2});
    CHECK(line.hop_distance(0, 2) == 2);
    CHECK(line.hop_distance(1, 1) == 0);
    CHECK_THROWS_AS(line.neighbors(3), IndexOutOfRange);

    const DeviceTopology hex = build_heavy_hex(127);
    CHECK_THROWS_AS(hex.neighbors(127), IndexOutOfRange);
    CHECK_THROWS_AS(hex.hop_distance(0, 127), IndexOutOfRange);

    // Cross-check against the oracle BFS.
    const oracle::HeavyHexRef ref;
    std::vector<std::vector<int>> adj(127);
    for (const auto& [a, b] : ref.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    const std::vector<int> from0 = oracle::bfs_distances(adj, 0);
    CHECK(hex.hop_distance(0, 108) == static_cast<uint32_t>(from0[108]));
    CHECK(hex.hop_distance(0, 126) == static_cast<uint32_t>(from0[126]));
    CHECK(hex.hop_distance(0, 64) == static_cast<uint32_t>(from0[64]));
}

TEST_CASE("every neighbors entry corresponds to exactly one edge") {
    const DeviceTopology topo = build_heavy_hex(127);
    size_t adjacency_entries = 0;
    for (qubit_t q = 0; q < topo.num_qubits(); q++) {
        for (qubit_t nb : topo.neighbors(q)) {
            CHECK(topo.has_edge(q, nb));
            adjacency_entries++;
        }
    }
    CHECK(adjacency_entries == 2 * topo.edges().size());
}

TEST_CASE("hop_distance is a metric on random connected graphs") {
    for (uint64_t seed = 1; seed <= 8; seed++) {
        const int n = 6 + static_cast<int>(seed % 5);
        const auto edge_list = oracle::random_connected_graph(n, n / 2, seed);

        std::vector<Edge> edges;
        for (const auto& [a, b] : edge_list) {
            edges.emplace_back(static_cast<qubit_t>(a), static_cast<qubit_t>(b));
        }
        CalibrationTable cal;
        cal.readout_error.assign(n, 0.0);
        cal.idle_flip_rate.assign(n, 0.0);
        for (const Edge& e : edges) cal.two_qubit_gate_error.emplace(e, 0.0);
        const DeviceTopology topo(static_cast<qubit_t>(n), edges, cal);

        for (qubit_t a = 0; a < topo.num_qubits(); a++) {
            for (qubit_t b = 0; b < topo.num_qubits(); b++) {
                const uint32_t dab = topo.hop_distance(a, b);
                CHECK(dab == topo.hop_distance(b, a));
                CHECK((dab == 0) == (a == b));
                for (qubit_t c = 0; c < topo.num_qubits(); c++) {
                    CHECK(dab <= topo.hop_distance(a, c) + topo.hop_distance(c, b));
                }
            }
        }
    }
}

TEST_CASE("DistanceMatrix agrees with hop_distance") {
    const DeviceTopology topo = build_heavy_hex(127);
    const DistanceMatrix dist = DistanceMatrix::compute(topo);
    for (qubit_t a = 0; a < 127; a += 13) {
        for (qubit_t b = 0; b < 127; b += 7) {
            CHECK(dist(a, b) == topo.hop_distance(a, b));
        }
    }
}

TEST_CASE("load_topology reads a line graph with defaults") {
    const std::string path = write_temp_json("xtalk_topo_ok.json", R"({
        "num_qubits": 5,
        "edges": [[0,1],[1,2],[2,3],[3,4]],
        "calibration": { "readout_error": {"2": 0.125} }
    })");
    const DeviceTopology topo = load_topology(path);
    CHECK(topo.num_qubits() == 5);
    CHECK(topo.edges().size() == 4);
    CHECK(topo.readout_error(2) == doctest::Approx(0.125));
    CHECK(topo.readout_error(1) == doctest::Approx(kDefaultReadoutError));
    CHECK(topo.two_qubit_gate_error(0, 1) == doctest::Approx(kDefaultTwoQubitGateError));
    std::filesystem::remove(path);
}

TEST_CASE("load_topology validation failures") {
    SUBCASE("edge endpoint out of range") {
        const std::string path = write_temp_json(
            "xtalk_topo_edge.json", R"({"num_qubits": 5, "edges": [[0,1],[1,2],[2,3],[3,4],[0,9]]})");
        CHECK_THROWS_AS(load_topology(path), ValidationError);
        std::filesystem::remove(path);
    }
    SUBCASE("probability out of bounds") {
        const std::string path = write_temp_json("xtalk_topo_prob.json", R"({
            "num_qubits": 2, "edges": [[0,1]],
            "calibration": { "readout_error": {"0": 1.2} }
        })");
        CHECK_THROWS_AS(load_topology(path), ValidationError);
        std::filesystem::remove(path);
    }
    SUBCASE("disconnected graph") {
        const std::string path = write_temp_json(
            "xtalk_topo_disc.json", R"({"num_qubits": 4, "edges": [[0,1],[2,3]]})");
        CHECK_THROWS_AS(load_topology(path), ValidationError);
        std::filesystem::remove(path);
    }
    SUBCASE("malformed JSON") {
        const std::string path = write_temp_json("xtalk_topo_bad.json", "{nope");
        CHECK_THROWS_AS(load_topology(path), ParseError);
        std::filesystem::remove(path);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_topology("/nonexistent/topo.json"), IoError);
    }
}
