#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xtalk/circuits.hpp"
#include "xtalk/noise.hpp"
#include "xtalk/pipeline.hpp"
#include "xtalk/topology.hpp"

namespace xtalk {

enum class SelectionStrategy { Optimal, Default, NonOptimal };

std::string strategy_name(SelectionStrategy strategy);
SelectionStrategy parse_strategy(const std::string& name);

// Labeled signature collection: one entry per candidate victim configuration.
// All entries share the listening-qubit ordering and shot count.
struct SignatureDataset {
    std::vector<std::string> labels;               // prediction tie-break order
    std::vector<std::vector<uint64_t>> entries;    // ones-counts aligned with labels
    std::vector<qubit_t> listening_qubits;         // ascending physical indices
    uint64_t shots = 0;
    std::map<std::string, std::string> provenance;

    size_t size() const { return labels.size(); }
    CrosstalkSignature signature_at(size_t index) const;
    std::optional<size_t> index_of(const std::string& label) const;
};

void save_dataset(const SignatureDataset& dataset, const std::string& path);
SignatureDataset load_dataset(const std::string& path);

struct PredictionResult {
    std::vector<std::string> ranked_labels;  // ascending by MSE
    std::vector<double> mse_values;          // aligned with ranked_labels
    std::string predicted;                   // rank-0 label
    std::optional<size_t> true_rank;         // zero-indexed rank of the true label
    std::optional<double> acc1;              // (n - true_rank) / n
    double confidence = 0.0;                 // normalized gap between best two MSEs
};

struct QubitScore {
    qubit_t qubit;
    double score;  // across-label variance of the ones-count
};

struct TradeoffPoint {
    size_t k;
    double mean_acc1;
    double mean_confidence;
};

enum class AllocationScheme { EvenIndices, Spread };

// Victim placement used by the learning stage. EvenIndices puts victim_size
// qubits at 0,2,4,...; Spread distributes them evenly over the whole index
// range (floor(j*(n-1)/(size-1))). Throws SizeOverflow.
Layout allocate_even_victim(const DeviceTopology& device, uint32_t victim_size,
                            AllocationScheme scheme);

// Runs one victim configuration next to the listening circuit and returns the
// listener's crosstalk signature.
CrosstalkSignature collect_signature(const VictimSpec& victim,
                                     std::span<const qubit_t> listening_qubits,
                                     const DeviceTopology& device, const CrosstalkModel& model,
                                     uint64_t shots, Seeds seeds);

// Learning stage: one signature per label via the full pipeline, each label
// with a seed derived from (seeds.rng, label). Throws FootprintConflict when
// a victim layout overlaps the listeners.
SignatureDataset learn_signatures(std::span<const std::string> labels,
                                  const std::function<VictimSpec(const std::string&)>& victim_builder,
                                  std::span<const qubit_t> listening_qubits,
                                  const DeviceTopology& device, const CrosstalkModel& model,
                                  uint64_t shots, Seeds seeds);

// Mean square error over the listening qubits. Throws ShapeMismatch unless
// both signatures share listening qubits and shots.
double mse(const CrosstalkSignature& a, const CrosstalkSignature& b);

// Ranks dataset entries by MSE against the observed signature (ties broken by
// label order) and derives Acc1 and the prediction confidence.
PredictionResult predict(const SignatureDataset& dataset, const CrosstalkSignature& observed,
                         const std::optional<std::string>& true_label = std::nullopt);

// Discriminability score per listening qubit: variance of its ones-count
// across dataset labels, descending (ties by ascending qubit index). Throws
// DatasetTooSmall for fewer than two entries.
std::vector<QubitScore> rank_qubits(const SignatureDataset& dataset);

// Optimal: top-k by score. NonOptimal: bottom-k, worst first. Default: the k
// lowest physical indices. Throws KOutOfRange.
std::vector<qubit_t> select_qubits(std::span<const QubitScore> ranked, size_t k,
                                   SelectionStrategy strategy);

// Projections onto a qubit subset (canonical ascending order).
CrosstalkSignature restrict_signature(const CrosstalkSignature& sig,
                                      std::span<const qubit_t> qubits);
SignatureDataset restrict_dataset(const SignatureDataset& dataset,
                                  std::span<const qubit_t> qubits);

// Mean Acc1 / confidence over labeled fresh observations for each k.
std::vector<TradeoffPoint> tradeoff_curve(
    const SignatureDataset& dataset, SelectionStrategy strategy,
    std::span<const std::pair<std::string, CrosstalkSignature>> eval_victims,
    std::span<const size_t> k_range);

}  // namespace xtalk
