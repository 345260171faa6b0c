#include "xtalk/passive_attack.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "json.hpp"
#include "xtalk/errors.hpp"
#include "xtalk/parallel.hpp"
#include "xtalk/report.hpp"
#include "xtalk/rng.hpp"

namespace xtalk {

std::string strategy_name(SelectionStrategy strategy) {
    switch (strategy) {
        case SelectionStrategy::Optimal: return "optimal";
        case SelectionStrategy::Default: return "default";
        case SelectionStrategy::NonOptimal: return "non-optimal";
    }
    return "?";
}

SelectionStrategy parse_strategy(const std::string& name) {
    if (name == "optimal") return SelectionStrategy::Optimal;
    if (name == "default") return SelectionStrategy::Default;
    if (name == "non-optimal") return SelectionStrategy::NonOptimal;
    throw ConfigError("unknown strategy \"" + name +
                      "\" (expected optimal|default|non-optimal)");
}

CrosstalkSignature SignatureDataset::signature_at(size_t index) const {
    return {listening_qubits, entries.at(index), shots};
}

std::optional<size_t> SignatureDataset::index_of(const std::string& label) const {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) return std::nullopt;
    return static_cast<size_t>(it - labels.begin());
}

void save_dataset(const SignatureDataset& dataset, const std::string& path) {
    nlohmann::ordered_json doc;
    doc["listening_qubits"] = dataset.listening_qubits;
    doc["shots"] = dataset.shots;
    nlohmann::ordered_json entries;
    for (size_t i = 0; i < dataset.labels.size(); i++) {
        entries[dataset.labels[i]] = dataset.entries[i];
    }
    doc["entries"] = std::move(entries);
    doc["provenance"] = dataset.provenance;
    write_file_atomic(path, doc.dump(2) + "\n");
}

SignatureDataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open dataset: " + path);
    nlohmann::ordered_json doc;
    try {
        in >> doc;
        SignatureDataset ds;
        ds.listening_qubits = doc.at("listening_qubits").get<std::vector<qubit_t>>();
        ds.shots = doc.at("shots").get<uint64_t>();
        for (const auto& [label, counts] : doc.at("entries").items()) {
            ds.labels.push_back(label);
            ds.entries.push_back(counts.get<std::vector<uint64_t>>());
            if (ds.entries.back().size() != ds.listening_qubits.size()) {
                throw ValidationError("dataset entry \"" + label + "\" has the wrong width");
            }
        }
        if (doc.contains("provenance")) {
            ds.provenance = doc.at("provenance").get<std::map<std::string, std::string>>();
        }
        return ds;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("malformed dataset " + path + ": " + e.what());
    }
}

Layout allocate_even_victim(const DeviceTopology& device, uint32_t victim_size,
                            AllocationScheme scheme) {
    const qubit_t n = device.num_qubits();
    if (victim_size == 0) throw SizeOverflow("victim size must be >= 1");

    std::vector<qubit_t> positions;
    if (scheme == AllocationScheme::EvenIndices) {
        if (victim_size > (n + 1) / 2) {
            throw SizeOverflow("even-index scheme fits at most " + std::to_string((n + 1) / 2) +
                               " qubits, requested " + std::to_string(victim_size));
        }
        for (uint32_t j = 0; j < victim_size; j++) positions.push_back(2 * j);
    } else {
        if (victim_size > n) {
            throw SizeOverflow("device has only " + std::to_string(n) + " qubits");
        }
        if (victim_size == 1) {
            positions.push_back(0);
        } else {
            for (uint32_t j = 0; j < victim_size; j++) {
                positions.push_back(static_cast<qubit_t>(
                    static_cast<uint64_t>(j) * (n - 1) / (victim_size - 1)));
            }
        }
    }
    return Layout(positions);
}

CrosstalkSignature collect_signature(const VictimSpec& victim,
                                     std::span<const qubit_t> listening_qubits,
                                     const DeviceTopology& device, const CrosstalkModel& model,
                                     uint64_t shots, Seeds seeds) {
    std::vector<qubit_t> listeners(listening_qubits.begin(), listening_qubits.end());
    std::sort(listeners.begin(), listeners.end());

    const std::vector<qubit_t> victim_fp = victim.layout.footprint();
    for (qubit_t q : listeners) {
        if (std::binary_search(victim_fp.begin(), victim_fp.end(), q)) {
            throw FootprintConflict("listening qubit " + std::to_string(q) +
                                    " overlaps the victim layout");
        }
    }

    RunResult run = run_tenants(device, model,
                                {{victim.circuit, victim.layout},
                                 {listening_circuit(static_cast<uint32_t>(listeners.size())),
                                  Layout(listeners)}},
                                seeds, shots);
    return signature(run.counts[1], run.program.tenants[1].circuit,
                     run.program.tenants[1].layout, listeners);
}

SignatureDataset learn_signatures(std::span<const std::string> labels,
                                  const std::function<VictimSpec(const std::string&)>& victim_builder,
                                  std::span<const qubit_t> listening_qubits,
                                  const DeviceTopology& device, const CrosstalkModel& model,
                                  uint64_t shots, Seeds seeds) {
    {
        std::set<std::string> unique(labels.begin(), labels.end());
        if (unique.size() != labels.size()) throw ValidationError("duplicate dataset labels");
    }

    SignatureDataset ds;
    ds.labels.assign(labels.begin(), labels.end());
    ds.listening_qubits.assign(listening_qubits.begin(), listening_qubits.end());
    std::sort(ds.listening_qubits.begin(), ds.listening_qubits.end());
    ds.shots = shots;
    ds.entries.resize(labels.size());

    parallel_for(labels.size(), [&](size_t i) {
        const VictimSpec victim = victim_builder(ds.labels[i]);
        Seeds label_seeds{seeds.transpile,
                          derive_seed(seeds.rng, "learn:" + ds.labels[i])};
        ds.entries[i] = collect_signature(victim, ds.listening_qubits, device, model, shots,
                                          label_seeds)
                            .ones_counts;
    });
    return ds;
}

double mse(const CrosstalkSignature& a, const CrosstalkSignature& b) {
    if (a.listening_qubits != b.listening_qubits || a.shots != b.shots) {
        throw ShapeMismatch("signatures differ in listening qubits or shots");
    }
    double sum = 0.0;
    for (size_t i = 0; i < a.ones_counts.size(); i++) {
        const double d =
            static_cast<double>(a.ones_counts[i]) - static_cast<double>(b.ones_counts[i]);
        sum += d * d;
    }
    return sum / static_cast<double>(a.ones_counts.size());
}

PredictionResult predict(const SignatureDataset& dataset, const CrosstalkSignature& observed,
                         const std::optional<std::string>& true_label) {
    if (dataset.listening_qubits != observed.listening_qubits ||
        dataset.shots != observed.shots) {
        throw ShapeMismatch("observed signature does not match the dataset shape");
    }
    if (dataset.size() == 0) throw DatasetTooSmall("dataset is empty");

    std::optional<size_t> true_index;
    if (true_label.has_value()) {
        true_index = dataset.index_of(*true_label);
        if (!true_index.has_value()) {
            throw UnknownTrueLabel("label \"" + *true_label + "\" is not in the dataset");
        }
    }

    std::vector<size_t> order(dataset.size());
    std::vector<double> errors(dataset.size());
    for (size_t i = 0; i < dataset.size(); i++) {
        order[i] = i;
        errors[i] = mse(dataset.signature_at(i), observed);
    }
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return errors[a] < errors[b];  // stable: ties keep label order
    });

    PredictionResult result;
    for (size_t rank = 0; rank < order.size(); rank++) {
        result.ranked_labels.push_back(dataset.labels[order[rank]]);
        result.mse_values.push_back(errors[order[rank]]);
    }
    result.predicted = result.ranked_labels.front();

    const double max_mse = result.mse_values.back();
    if (result.mse_values.size() >= 2 && max_mse > 0.0) {
        const double gap = (result.mse_values[1] - result.mse_values[0]) / max_mse;
        result.confidence = std::clamp(gap, 0.0, 1.0);
    }

    if (true_index.has_value()) {
        const size_t rank =
            std::find(order.begin(), order.end(), *true_index) - order.begin();
        result.true_rank = rank;
        result.acc1 = static_cast<double>(dataset.size() - rank) /
                      static_cast<double>(dataset.size());
    }
    return result;
}

std::vector<QubitScore> rank_qubits(const SignatureDataset& dataset) {
    if (dataset.size() < 2) throw DatasetTooSmall("need at least two dataset entries");

    const size_t width = dataset.listening_qubits.size();
    const double n = static_cast<double>(dataset.size());
    std::vector<QubitScore> scores(width);
    for (size_t j = 0; j < width; j++) {
        double mean = 0.0;
        for (const auto& entry : dataset.entries) mean += static_cast<double>(entry[j]);
        mean /= n;
        double var = 0.0;
        for (const auto& entry : dataset.entries) {
            const double d = static_cast<double>(entry[j]) - mean;
            var += d * d;
        }
        scores[j] = {dataset.listening_qubits[j], var / n};
    }
    std::sort(scores.begin(), scores.end(), [](const QubitScore& a, const QubitScore& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.qubit < b.qubit;
    });
    return scores;
}

std::vector<qubit_t> select_qubits(std::span<const QubitScore> ranked, size_t k,
                                   SelectionStrategy strategy) {
    if (k < 1 || k > ranked.size()) {
        throw KOutOfRange("k = " + std::to_string(k) + " outside [1," +
                          std::to_string(ranked.size()) + "]");
    }
    std::vector<qubit_t> selected;
    selected.reserve(k);
    switch (strategy) {
        case SelectionStrategy::Optimal:
            for (size_t i = 0; i < k; i++) selected.push_back(ranked[i].qubit);
            break;
        case SelectionStrategy::NonOptimal:
            for (size_t i = 0; i < k; i++) selected.push_back(ranked[ranked.size() - 1 - i].qubit);
            break;
        case SelectionStrategy::Default: {
            std::vector<qubit_t> by_index;
            for (const QubitScore& qs : ranked) by_index.push_back(qs.qubit);
            std::sort(by_index.begin(), by_index.end());
            selected.assign(by_index.begin(), by_index.begin() + k);
            break;
        }
    }
    return selected;
}

CrosstalkSignature restrict_signature(const CrosstalkSignature& sig,
                                      std::span<const qubit_t> qubits) {
    std::vector<qubit_t> wanted(qubits.begin(), qubits.end());
    std::sort(wanted.begin(), wanted.end());

    CrosstalkSignature out;
    out.shots = sig.shots;
    for (qubit_t q : wanted) {
        const auto it =
            std::lower_bound(sig.listening_qubits.begin(), sig.listening_qubits.end(), q);
        if (it == sig.listening_qubits.end() || *it != q) {
            throw MissingQubit("qubit " + std::to_string(q) + " is not in the signature");
        }
        out.listening_qubits.push_back(q);
        out.ones_counts.push_back(sig.ones_counts[it - sig.listening_qubits.begin()]);
    }
    return out;
}

SignatureDataset restrict_dataset(const SignatureDataset& dataset,
                                  std::span<const qubit_t> qubits) {
    SignatureDataset out;
    out.labels = dataset.labels;
    out.shots = dataset.shots;
    out.provenance = dataset.provenance;
    out.entries.reserve(dataset.entries.size());
    for (size_t i = 0; i < dataset.size(); i++) {
        CrosstalkSignature restricted = restrict_signature(dataset.signature_at(i), qubits);
        if (out.listening_qubits.empty()) out.listening_qubits = restricted.listening_qubits;
        out.entries.push_back(std::move(restricted.ones_counts));
    }
    return out;
}

std::vector<TradeoffPoint> tradeoff_curve(
        const SignatureDataset& dataset, SelectionStrategy strategy,
        std::span<const std::pair<std::string, CrosstalkSignature>> eval_victims,
        std::span<const size_t> k_range) {
    if (eval_victims.empty()) throw ValidationError("tradeoff curve needs evaluation runs");
    const std::vector<QubitScore> ranked = rank_qubits(dataset);

    std::vector<TradeoffPoint> points;
    for (size_t k : k_range) {
        const std::vector<qubit_t> selected = select_qubits(ranked, k, strategy);
        const SignatureDataset small = restrict_dataset(dataset, selected);
        double acc_sum = 0.0;
        double conf_sum = 0.0;
        for (const auto& [label, observed] : eval_victims) {
            const PredictionResult r = predict(small, restrict_signature(observed, selected),
                                               label);
            acc_sum += *r.acc1;
            conf_sum += r.confidence;
        }
        const double denom = static_cast<double>(eval_victims.size());
        points.push_back({k, acc_sum / denom, conf_sum / denom});
    }
    return points;
}

}  // namespace xtalk
