#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace xtalk {

using qubit_t = uint32_t;

// Unordered physical-qubit pair, stored normalized (a < b).
struct Edge {
    qubit_t a;
    qubit_t b;

    Edge(qubit_t x, qubit_t y) : a(x < y ? x : y), b(x < y ? y : x) {}
    auto operator<=>(const Edge&) const = default;
};

struct CalibrationTable {
    std::vector<double> readout_error;        // per qubit
    std::vector<double> idle_flip_rate;       // per qubit, per circuit execution
    std::map<Edge, double> two_qubit_gate_error;  // per coupling edge
};

inline constexpr double kDefaultReadoutError = 0.02;
inline constexpr double kDefaultTwoQubitGateError = 0.01;
inline constexpr double kDefaultIdleFlipRate = 0.005;

// Immutable after construction; safe for unrestricted concurrent reads.
class DeviceTopology {
  public:
    DeviceTopology(qubit_t num_qubits, std::vector<Edge> edges, CalibrationTable calibration);

    qubit_t num_qubits() const { return num_qubits_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const CalibrationTable& calibration() const { return calibration_; }

    bool has_edge(qubit_t a, qubit_t b) const;

    // Ascending-sorted adjacency list. Throws IndexOutOfRange.
    const std::vector<qubit_t>& neighbors(qubit_t q) const;

    // BFS shortest-path length in edges. Throws IndexOutOfRange.
    uint32_t hop_distance(qubit_t a, qubit_t b) const;

    double readout_error(qubit_t q) const { return calibration_.readout_error[q]; }
    double idle_flip_rate(qubit_t q) const { return calibration_.idle_flip_rate[q]; }
    double two_qubit_gate_error(qubit_t a, qubit_t b) const;

  private:
    qubit_t num_qubits_;
    std::vector<Edge> edges_;
    std::vector<std::vector<qubit_t>> adjacency_;
    CalibrationTable calibration_;
};

// Builds the heavy-hex coupling graph of a 127-qubit processor with default
// calibration. Qubit indices follow the IBM row-major convention:
//
//   row 0:  qubits   0..13   (columns 0..13)
//   bridge: qubits  14..17   hanging below columns 0,4,8,12
//   row 1:  qubits  18..32   (columns 0..14)
//   bridge: qubits  33..36   below columns 2,6,10,14
//   row 2:  qubits  37..51
//   bridge: qubits  52..55   below columns 0,4,8,12
//   row 3:  qubits  56..70
//   bridge: qubits  71..74   below columns 2,6,10,14
//   row 4:  qubits  75..89
//   bridge: qubits  90..93   below columns 0,4,8,12
//   row 5:  qubits  94..108
//   bridge: qubits 109..112  below columns 2,6,10,14
//   row 6:  qubits 113..126  (columns 1..14)
//
// Deterministic: the same size always yields the identical edge set.
// Throws UnsupportedSize for sizes other than 127.
DeviceTopology build_heavy_hex(qubit_t num_qubits);

// Loads a topology from a JSON file:
//   { "num_qubits": n, "edges": [[a,b],...],
//     "calibration": { "readout_error": {"q": p,...},
//                      "two_qubit_gate_error": {"a-b": p,...},
//                      "idle_flip_rate": {"q": p,...} } }
// Missing calibration entries are filled from the defaults above.
// Throws IoError (unreadable file), ParseError (malformed JSON), or
// ValidationError (disconnected graph, bad index, probability outside [0,1]).
DeviceTopology load_topology(const std::string& path);

// All-pairs hop distances, precomputed once for noise accumulation.
class DistanceMatrix {
  public:
    static DistanceMatrix compute(const DeviceTopology& topo);

    uint32_t operator()(qubit_t a, qubit_t b) const { return dist_[a * n_ + b]; }

  private:
    DistanceMatrix(qubit_t n, std::vector<uint16_t> dist) : n_(n), dist_(std::move(dist)) {}
    qubit_t n_;
    std::vector<uint16_t> dist_;
};

}  // namespace xtalk
