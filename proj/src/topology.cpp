#include "xtalk/topology.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>

#include "json.hpp"
#include "xtalk/errors.hpp"

namespace xtalk {

namespace {

void check_index(qubit_t q, qubit_t n) {
    if (q >= n) {
        throw IndexOutOfRange("qubit index " + std::to_string(q) + " out of range for " +
                              std::to_string(n) + "-qubit device");
    }
}

void check_probability(double p, const std::string& what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ValidationError(what + " probability " + std::to_string(p) + " outside [0,1]");
    }
}

}  // namespace

DeviceTopology::DeviceTopology(qubit_t num_qubits, std::vector<Edge> edges,
                               CalibrationTable calibration)
    : num_qubits_(num_qubits), edges_(std::move(edges)), calibration_(std::move(calibration)) {
    if (num_qubits_ == 0) throw ValidationError("device must have at least one qubit");

    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    adjacency_.assign(num_qubits_, {});
    for (const Edge& e : edges_) {
        if (e.a == e.b) throw ValidationError("self-loop edge on qubit " + std::to_string(e.a));
        check_index(e.b, num_qubits_);
        adjacency_[e.a].push_back(e.b);
        adjacency_[e.b].push_back(e.a);
    }
    for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());

    // Connectivity check.
    if (num_qubits_ > 1) {
        std::vector<bool> seen(num_qubits_, false);
        std::deque<qubit_t> frontier{0};
        seen[0] = true;
        size_t reached = 1;
        while (!frontier.empty()) {
            qubit_t q = frontier.front();
            frontier.pop_front();
            for (qubit_t nb : adjacency_[q]) {
                if (!seen[nb]) {
                    seen[nb] = true;
                    reached++;
                    frontier.push_back(nb);
                }
            }
        }
        if (reached != num_qubits_) throw ValidationError("coupling graph is disconnected");
    }

    // Calibration completeness and bounds.
    if (calibration_.readout_error.size() != num_qubits_ ||
        calibration_.idle_flip_rate.size() != num_qubits_) {
        throw ValidationError("calibration table does not cover every qubit");
    }
    for (qubit_t q = 0; q < num_qubits_; q++) {
        check_probability(calibration_.readout_error[q], "readout_error");
        check_probability(calibration_.idle_flip_rate[q], "idle_flip_rate");
    }
    for (const Edge& e : edges_) {
        auto it = calibration_.two_qubit_gate_error.find(e);
        if (it == calibration_.two_qubit_gate_error.end()) {
            throw ValidationError("calibration missing two_qubit_gate_error for an edge");
        }
        check_probability(it->second, "two_qubit_gate_error");
    }
}

bool DeviceTopology::has_edge(qubit_t a, qubit_t b) const {
    if (a >= num_qubits_ || b >= num_qubits_ || a == b) return false;
    const auto& adj = adjacency_[a];
    return std::binary_search(adj.begin(), adj.end(), b);
}

const std::vector<qubit_t>& DeviceTopology::neighbors(qubit_t q) const {
    check_index(q, num_qubits_);
    return adjacency_[q];
}

uint32_t DeviceTopology::hop_distance(qubit_t a, qubit_t b) const {
    check_index(a, num_qubits_);
    check_index(b, num_qubits_);
    if (a == b) return 0;
    std::vector<uint32_t> dist(num_qubits_, UINT32_MAX);
    std::deque<qubit_t> frontier{a};
    dist[a] = 0;
    while (!frontier.empty()) {
        qubit_t q = frontier.front();
        frontier.pop_front();
        for (qubit_t nb : adjacency_[q]) {
            if (dist[nb] == UINT32_MAX) {
                dist[nb] = dist[q] + 1;
                if (nb == b) return dist[nb];
                frontier.push_back(nb);
            }
        }
    }
    return UINT32_MAX;  // unreachable on a connected graph
}

double DeviceTopology::two_qubit_gate_error(qubit_t a, qubit_t b) const {
    auto it = calibration_.two_qubit_gate_error.find(Edge(a, b));
    if (it == calibration_.two_qubit_gate_error.end()) {
        throw ValidationError("no coupling edge (" + std::to_string(a) + "," + std::to_string(b) +
                              ")");
    }
    return it->second;
}

static CalibrationTable default_calibration(qubit_t num_qubits, const std::vector<Edge>& edges) {
    CalibrationTable cal;
    cal.readout_error.assign(num_qubits, kDefaultReadoutError);
    cal.idle_flip_rate.assign(num_qubits, kDefaultIdleFlipRate);
    for (const Edge& e : edges) cal.two_qubit_gate_error.emplace(e, kDefaultTwoQubitGateError);
    return cal;
}

DeviceTopology build_heavy_hex(qubit_t num_qubits) {
    if (num_qubits != 127) {
        throw UnsupportedSize("heavy-hex size " + std::to_string(num_qubits) +
                              " not supported; supported sizes: 127");
    }

    // Row lengths and the column of each row's first qubit (rows 0 and 6 are
    // one qubit short at opposite ends of the lattice).
    const int kRows = 7;
    const int row_len[kRows] = {14, 15, 15, 15, 15, 15, 14};
    const int row_col0[kRows] = {0, 0, 0, 0, 0, 0, 1};

    std::vector<qubit_t> row_start(kRows);
    std::vector<qubit_t> bridge_start(kRows - 1);
    qubit_t next = 0;
    for (int r = 0; r < kRows; r++) {
        row_start[r] = next;
        next += row_len[r];
        if (r + 1 < kRows) {
            bridge_start[r] = next;
            next += 4;
        }
    }

    auto row_qubit = [&](int r, int col) -> qubit_t {
        return row_start[r] + static_cast<qubit_t>(col - row_col0[r]);
    };

    std::vector<Edge> edges;
    for (int r = 0; r < kRows; r++) {
        for (int j = 1; j < row_len[r]; j++) {
            edges.emplace_back(row_start[r] + j - 1, row_start[r] + j);
        }
    }
    // Bridges below even rows sit at columns 0,4,8,12; below odd rows at 2,6,10,14.
    for (int r = 0; r + 1 < kRows; r++) {
        for (int k = 0; k < 4; k++) {
            int col = (r % 2 == 0 ? 0 : 2) + 4 * k;
            qubit_t bridge = bridge_start[r] + static_cast<qubit_t>(k);
            edges.emplace_back(row_qubit(r, col), bridge);
            edges.emplace_back(bridge, row_qubit(r + 1, col));
        }
    }

    return DeviceTopology(num_qubits, edges, default_calibration(num_qubits, edges));
}

DeviceTopology load_topology(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open topology file: " + path);

    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("malformed topology file " + path + ": " + e.what());
    }

    try {
        if (!doc.is_object() || !doc.contains("num_qubits") || !doc.contains("edges")) {
            throw ParseError("topology file must define num_qubits and edges");
        }
        const auto n = doc.at("num_qubits").get<int64_t>();
        if (n <= 0) throw ValidationError("num_qubits must be positive");
        const qubit_t num_qubits = static_cast<qubit_t>(n);

        std::vector<Edge> edges;
        for (const auto& pair : doc.at("edges")) {
            if (!pair.is_array() || pair.size() != 2) {
                throw ParseError("each edge must be a two-element array");
            }
            const auto a = pair[0].get<int64_t>();
            const auto b = pair[1].get<int64_t>();
            if (a < 0 || b < 0 || a >= n || b >= n) {
                throw ValidationError("edge endpoint out of range");
            }
            edges.emplace_back(static_cast<qubit_t>(a), static_cast<qubit_t>(b));
        }

        CalibrationTable cal = default_calibration(num_qubits, edges);
        if (doc.contains("calibration")) {
            const auto& c = doc.at("calibration");
            auto parse_qubit_map = [&](const char* key, std::vector<double>& dest) {
                if (!c.contains(key)) return;
                for (const auto& [qs, value] : c.at(key).items()) {
                    const long q = std::stol(qs);
                    if (q < 0 || q >= n) throw ValidationError("calibration qubit out of range");
                    dest[static_cast<size_t>(q)] = value.get<double>();
                }
            };
            parse_qubit_map("readout_error", cal.readout_error);
            parse_qubit_map("idle_flip_rate", cal.idle_flip_rate);
            if (c.contains("two_qubit_gate_error")) {
                for (const auto& [key, value] : c.at("two_qubit_gate_error").items()) {
                    const auto dash = key.find('-');
                    if (dash == std::string::npos) {
                        throw ParseError("edge calibration key must look like \"a-b\"");
                    }
                    const long a = std::stol(key.substr(0, dash));
                    const long b = std::stol(key.substr(dash + 1));
                    if (a < 0 || b < 0 || a >= n || b >= n) {
                        throw ValidationError("calibration edge out of range");
                    }
                    cal.two_qubit_gate_error[Edge(static_cast<qubit_t>(a),
                                                  static_cast<qubit_t>(b))] = value.get<double>();
                }
            }
        }

        return DeviceTopology(num_qubits, std::move(edges), std::move(cal));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("malformed topology file " + path + ": " + e.what());
    }
}

DistanceMatrix DistanceMatrix::compute(const DeviceTopology& topo) {
    const qubit_t n = topo.num_qubits();
    std::vector<uint16_t> dist(static_cast<size_t>(n) * n, UINT16_MAX);
    std::deque<qubit_t> frontier;
    for (qubit_t src = 0; src < n; src++) {
        uint16_t* row = dist.data() + static_cast<size_t>(src) * n;
        row[src] = 0;
        frontier.assign(1, src);
        while (!frontier.empty()) {
            qubit_t q = frontier.front();
            frontier.pop_front();
            for (qubit_t nb : topo.neighbors(q)) {
                if (row[nb] == UINT16_MAX) {
                    row[nb] = static_cast<uint16_t>(row[q] + 1);
                    frontier.push_back(nb);
                }
            }
        }
    }
    return DistanceMatrix(n, std::move(dist));
}

}  // namespace xtalk
