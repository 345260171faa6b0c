#include "xtalk/noise.hpp"

#include <algorithm>
#include <fstream>

#include "json.hpp"
#include "xtalk/errors.hpp"
#include "xtalk/report.hpp"
#include "xtalk/rng.hpp"
#include "xtalk/statevector.hpp"

namespace xtalk {

void CrosstalkModel::validate() const {
    if (!(gamma_adjacent >= 0.0 && gamma_path >= gamma_adjacent && gamma_path <= 1.0)) {
        throw ValidationError("require 0 <= gamma_adjacent <= gamma_path <= 1");
    }
    if (!(decay > 0.0 && decay <= 1.0)) throw ValidationError("require 0 < decay <= 1");
    if (!(cap >= 0.0 && cap <= 1.0)) throw ValidationError("require 0 <= cap <= 1");
}

CrosstalkModel load_noise_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open noise profile: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
        CrosstalkModel m;
        m.gamma_path = doc.at("gamma_path").get<double>();
        m.gamma_adjacent = doc.at("gamma_adjacent").get<double>();
        m.decay = doc.at("decay").get<double>();
        m.cap = doc.at("cap").get<double>();
        m.validate();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("malformed noise profile " + path + ": " + e.what());
    }
}

void save_noise_profile(const CrosstalkModel& model, const std::string& path) {
    nlohmann::json doc{{"gamma_path", model.gamma_path},
                       {"gamma_adjacent", model.gamma_adjacent},
                       {"decay", model.decay},
                       {"cap", model.cap}};
    write_file_atomic(path, doc.dump(2) + "\n");
}

namespace {

// 127-qubit node-set of a SwapPath as a flat bitmask.
struct PathMask {
    uint64_t words[4] = {0, 0, 0, 0};

    void set(qubit_t q) { words[q >> 6] |= uint64_t{1} << (q & 63); }
    bool test(qubit_t q) const { return (words[q >> 6] >> (q & 63)) & 1; }
};

}  // namespace

FlipProbMap accumulate_flip_probs(const MultiTenantProgram& program,
                                  std::span<const RoutedCircuit> routed,
                                  const CrosstalkModel& model) {
    model.validate();
    if (program.device == nullptr) throw ValidationError("program has no device");
    const DeviceTopology& topo = *program.device;
    const qubit_t n = topo.num_qubits();

    if (routed.size() != program.tenants.size()) {
        throw InconsistentRouting("routed circuit count does not match tenant count");
    }
    for (size_t t = 0; t < routed.size(); t++) {
        if (routed[t].layout.physical_qubits() != program.tenants[t].layout.physical_qubits()) {
            throw InconsistentRouting("routed layout differs from program layout for tenant " +
                                      std::to_string(t));
        }
    }

    // Owner of each physical qubit (-1 = unallocated). Crosstalk is only
    // tracked for allocated qubits: a qubit with no tenant is never measured,
    // and a tenant-owned qubit only hears gates of other tenants.
    std::vector<int> owner(n, -1);
    std::vector<qubit_t> allocated;
    for (size_t t = 0; t < program.tenants.size(); t++) {
        for (qubit_t p : program.tenants[t].layout.physical_qubits()) {
            owner[p] = static_cast<int>(t);
            allocated.push_back(p);
        }
    }
    std::sort(allocated.begin(), allocated.end());

    const DistanceMatrix dist = DistanceMatrix::compute(topo);

    // Decay powers: gamma_adjacent * decay^(d-1), cut off once negligible.
    std::vector<double> strength_at;
    strength_at.push_back(0.0);  // d = 0 handled by the on-path branch
    double s = model.gamma_adjacent;
    while (s > 1e-12 && strength_at.size() < 256) {
        strength_at.push_back(s);
        s *= model.decay;
    }

    // Survival products; probabilities compose as 1 - prod(1 - p_i).
    std::vector<double> baseline_survival(n, 1.0);
    std::vector<double> crosstalk_survival(n, 1.0);

    for (qubit_t q = 0; q < n; q++) {
        baseline_survival[q] *= (1.0 - topo.idle_flip_rate(q)) * (1.0 - topo.readout_error(q));
    }

    for (size_t t = 0; t < routed.size(); t++) {
        std::vector<PathMask> masks(routed[t].swap_paths.size());
        for (size_t i = 0; i < masks.size(); i++) {
            for (qubit_t node : routed[t].swap_paths[i].nodes) masks[i].set(node);
        }

        for (const PhysicalGate& g : routed[t].physical_gates) {
            if (!is_two_qubit(g.kind)) continue;

            // Own-tenant operands: calibration gate error.
            const double edge_err = topo.two_qubit_gate_error(g.q0, g.q1);
            if (owner[g.q0] == static_cast<int>(t)) baseline_survival[g.q0] *= 1.0 - edge_err;
            if (owner[g.q1] == static_cast<int>(t)) baseline_survival[g.q1] *= 1.0 - edge_err;

            // Spectators: on-path qubits take gamma_path, others decay with
            // hop distance to the active edge.
            const PathMask& mask = masks[g.path_index];
            for (qubit_t q : allocated) {
                if (owner[q] == static_cast<int>(t)) continue;
                double p;
                if (mask.test(q)) {
                    p = model.gamma_path;
                } else {
                    const uint32_t d = std::min(dist(q, g.q0), dist(q, g.q1));
                    if (d >= strength_at.size()) continue;
                    p = strength_at[d];
                }
                crosstalk_survival[q] *= 1.0 - p;
            }
        }
    }

    FlipProbMap map;
    map.baseline.resize(n);
    map.crosstalk.resize(n);
    for (qubit_t q = 0; q < n; q++) {
        map.baseline[q] = 1.0 - baseline_survival[q];
        map.crosstalk[q] = std::min(1.0 - crosstalk_survival[q], model.cap);
    }
    return map;
}

namespace {

// Uniform sampler over {z : z.s = 0 (mod 2)}; for s = 0 that is every z.
struct NullSpaceSampler {
    std::vector<std::string> basis;

    explicit NullSpaceSampler(const std::string& shift) {
        const size_t n = shift.size();
        const size_t k = shift.find('1');
        for (size_t j = 0; j < n; j++) {
            if (j == k) continue;
            std::string v(n, '0');
            v[j] = '1';
            if (shift[j] == '1') v[k] = '1';
            basis.push_back(std::move(v));
        }
    }

    std::string draw(Rng& rng) const {
        std::string z(basis.empty() ? 0 : basis[0].size(), '0');
        for (const std::string& v : basis) {
            if (rng.bernoulli(0.5)) {
                for (size_t i = 0; i < z.size(); i++) {
                    if (v[i] == '1') z[i] = z[i] == '1' ? '0' : '1';
                }
            }
        }
        return z;
    }
};

}  // namespace

std::vector<CountsMap> sample_shots(const MultiTenantProgram& program,
                                    const FlipProbMap& flipmap, uint64_t shots,
                                    uint64_t rng_seed) {
    if (shots == 0) throw ValidationError("shots must be >= 1");

    std::vector<CountsMap> results;
    results.reserve(program.tenants.size());

    for (size_t t = 0; t < program.tenants.size(); t++) {
        const LogicalCircuit& circuit = program.tenants[t].circuit;
        const Layout& layout = program.tenants[t].layout;
        const std::vector<uint32_t> measured = circuit.measured_qubits();

        std::vector<double> flip_prob(measured.size());
        for (size_t j = 0; j < measured.size(); j++) {
            flip_prob[j] = flipmap.total(layout.physical(measured[j]));
        }

        Rng rng(derive_seed(rng_seed, "tenant", t));

        // Noiseless output sampler.
        enum class Mode { AllZeros, NullSpace, Dense } mode;
        NullSpaceSampler nullspace("");
        std::vector<std::pair<double, std::string>> cumulative;
        if (circuit.hint.kind == SamplerHint::Kind::AllZeros) {
            mode = Mode::AllZeros;
        } else if (circuit.hint.kind == SamplerHint::Kind::SimonNullSpace &&
                   circuit.num_qubits > 12) {
            mode = Mode::NullSpace;
            nullspace = NullSpaceSampler(circuit.hint.shift);
        } else if (circuit.num_qubits <= 12) {
            mode = Mode::Dense;
            StateVector sv(circuit.num_qubits);
            sv.apply_circuit(circuit);
            double acc = 0.0;
            for (const auto& [key, p] : sv.measured_distribution(measured)) {
                acc += p;
                cumulative.emplace_back(acc, key);
            }
        } else {
            throw TooManyQubits("tenant " + std::to_string(t) + " has " +
                                std::to_string(circuit.num_qubits) +
                                " qubits and no structural sampler");
        }

        CountsMap out;
        out.shots = shots;
        out.width = static_cast<uint32_t>(measured.size());
        std::string bits(measured.size(), '0');
        for (uint64_t shot = 0; shot < shots; shot++) {
            switch (mode) {
                case Mode::AllZeros:
                    std::fill(bits.begin(), bits.end(), '0');
                    break;
                case Mode::NullSpace:
                    bits = nullspace.draw(rng);
                    break;
                case Mode::Dense: {
                    const double r = rng.next_double();
                    auto it = std::upper_bound(
                        cumulative.begin(), cumulative.end(), r,
                        [](double v, const auto& entry) { return v < entry.first; });
                    if (it == cumulative.end()) it = std::prev(cumulative.end());
                    bits = it->second;
                    break;
                }
            }
            for (size_t j = 0; j < bits.size(); j++) {
                if (rng.bernoulli(flip_prob[j])) bits[j] = bits[j] == '1' ? '0' : '1';
            }
            out.counts[bits]++;
        }
        results.push_back(std::move(out));
    }
    return results;
}

double output_accuracy(const CountsMap& counts, const std::string& expected) {
    if (expected.size() != counts.width) {
        throw LengthMismatch("expected bitstring width " + std::to_string(expected.size()) +
                             " != counts width " + std::to_string(counts.width));
    }
    const auto it = counts.counts.find(expected);
    if (it == counts.counts.end()) return 0.0;
    return static_cast<double>(it->second) / static_cast<double>(counts.shots);
}

CrosstalkSignature signature(const CountsMap& counts, const LogicalCircuit& circuit,
                             const Layout& layout, std::span<const qubit_t> listening_qubits) {
    // Bit position of each measured physical qubit in the outcome strings:
    // character j holds the j-th measured logical qubit.
    const std::vector<uint32_t> measured = circuit.measured_qubits();
    if (measured.size() != counts.width) {
        throw MissingQubit("counts width does not match the tenant's measured qubits");
    }
    std::map<qubit_t, size_t> bit_of;
    for (size_t j = 0; j < measured.size(); j++) {
        bit_of[layout.physical(measured[j])] = j;
    }

    CrosstalkSignature sig;
    sig.shots = counts.shots;
    sig.listening_qubits.assign(listening_qubits.begin(), listening_qubits.end());
    std::sort(sig.listening_qubits.begin(), sig.listening_qubits.end());

    std::vector<size_t> positions;
    for (qubit_t q : sig.listening_qubits) {
        auto it = bit_of.find(q);
        if (it == bit_of.end()) {
            throw MissingQubit("listening qubit " + std::to_string(q) +
                               " was not measured by this tenant");
        }
        positions.push_back(it->second);
    }

    sig.ones_counts.assign(sig.listening_qubits.size(), 0);
    for (const auto& [bits, count] : counts.counts) {
        for (size_t j = 0; j < positions.size(); j++) {
            if (bits[positions[j]] == '1') sig.ones_counts[j] += count;
        }
    }
    return sig;
}

}  // namespace xtalk
