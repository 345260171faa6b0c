#pragma once

// Test-only reference implementations, kept independent of the library code
// they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

// Reference heavy-hex enumeration built from explicit grid coordinates: seven
// qubit rows on a 15-column grid, with four bridge qubits hanging between
// consecutive rows. Edges come from coordinate adjacency, not index math.
struct HeavyHexRef {
    std::map<std::pair<int, int>, int> qubit_at;  // (row*2, col) / bridge rows odd
    std::set<std::pair<int, int>> edges;          // normalized (lo, hi)
    int num_qubits = 0;

    HeavyHexRef() {
        // Row extents: row 0 spans columns 0..13, rows 1..5 span 0..14,
        // row 6 spans 1..14. Bridges below row r sit at columns 0,4,8,12
        // for even r and 2,6,10,14 for odd r.
        int id = 0;
        for (int r = 0; r < 7; r++) {
            const int lo = (r == 6) ? 1 : 0;
            const int hi = (r == 0) ? 13 : 14;
            for (int c = lo; c <= hi; c++) qubit_at[{2 * r, c}] = id++;
            if (r < 6) {
                for (int k = 0; k < 4; k++) {
                    const int c = (r % 2 == 0 ? 0 : 2) + 4 * k;
                    qubit_at[{2 * r + 1, c}] = id++;
                }
            }
        }
        num_qubits = id;

        auto add = [&](int a, int b) {
            edges.insert({std::min(a, b), std::max(a, b)});
        };
        for (const auto& [pos, q] : qubit_at) {
            const auto [row, col] = pos;
            // Horizontal neighbor within a qubit row.
            auto right = qubit_at.find({row, col + 1});
            if (row % 2 == 0 && right != qubit_at.end()) add(q, right->second);
            // Vertical neighbors of a bridge qubit.
            if (row % 2 == 1) {
                add(q, qubit_at.at({row - 1, col}));
                add(q, qubit_at.at({row + 1, col}));
            }
        }
    }
};

// Plain BFS distances over an adjacency list.
inline std::vector<int> bfs_distances(const std::vector<std::vector<int>>& adj, int src) {
    std::vector<int> dist(adj.size(), -1);
    std::deque<int> frontier{src};
    dist[src] = 0;
    while (!frontier.empty()) {
        const int q = frontier.front();
        frontier.pop_front();
        for (int nb : adj[q]) {
            if (dist[nb] < 0) {
                dist[nb] = dist[q] + 1;
                frontier.push_back(nb);
            }
        }
    }
    return dist;
}

// Lexicographically smallest shortest path: walk from src, always taking the
// lowest-index neighbor that still lies on some shortest path to dst.
inline std::vector<int> lexicographic_shortest_path(const std::vector<std::vector<int>>& adj,
                                                    int src, int dst) {
    const std::vector<int> to_dst = bfs_distances(adj, dst);
    std::vector<int> path{src};
    int cur = src;
    while (cur != dst) {
        int best = -1;
        for (int nb : adj[cur]) {
            if (to_dst[nb] == to_dst[cur] - 1 && (best < 0 || nb < best)) best = nb;
        }
        path.push_back(best);
        cur = best;
    }
    return path;
}

// Random connected graph on n nodes: a random spanning tree plus extra edges.
inline std::vector<std::pair<int, int>> random_connected_graph(int n, int extra_edges,
                                                               uint64_t seed) {
    // xorshift-style generator local to the tests.
    uint64_t state = seed * 2654435769ULL + 1;
    auto next = [&]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };

    std::set<std::pair<int, int>> edges;
    for (int v = 1; v < n; v++) {
        const int u = static_cast<int>(next() % v);
        edges.insert({std::min(u, v), std::max(u, v)});
    }
    for (int e = 0; e < extra_edges; e++) {
        const int a = static_cast<int>(next() % n);
        const int b = static_cast<int>(next() % n);
        if (a != b) edges.insert({std::min(a, b), std::max(a, b)});
    }
    return {edges.begin(), edges.end()};
}

// 4-sigma binomial band around the expected count.
inline bool within_binomial_band(double ones, uint64_t shots, double p) {
    const double mean = static_cast<double>(shots) * p;
    const double sigma = std::sqrt(static_cast<double>(shots) * p * (1.0 - p));
    return ones >= mean - 4.0 * sigma && ones <= mean + 4.0 * sigma;
}

}  // namespace oracle
