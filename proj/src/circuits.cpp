#include "xtalk/circuits.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "json.hpp"
#include "xtalk/errors.hpp"

namespace xtalk {

bool is_two_qubit(GateKind kind) {
    switch (kind) {
        case GateKind::CZ:
        case GateKind::CNOT:
        case GateKind::SWAP:
            return true;
        default:
            return false;
    }
}

std::string gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "h";
        case GateKind::X: return "x";
        case GateKind::Z: return "z";
        case GateKind::CZ: return "cz";
        case GateKind::CNOT: return "cnot";
        case GateKind::SWAP: return "swap";
        case GateKind::MEASURE: return "measure";
    }
    return "?";
}

std::vector<uint32_t> LogicalCircuit::measured_qubits() const {
    std::vector<uint32_t> qubits;
    for (const Gate& g : gates) {
        if (g.kind == GateKind::MEASURE) qubits.push_back(g.q0);
    }
    std::sort(qubits.begin(), qubits.end());
    qubits.erase(std::unique(qubits.begin(), qubits.end()), qubits.end());
    return qubits;
}

void LogicalCircuit::validate() const {
    std::vector<bool> measured(num_qubits, false);
    for (const Gate& g : gates) {
        if (g.q0 >= num_qubits || (is_two_qubit(g.kind) && g.q1 >= num_qubits)) {
            throw IndexOutOfRange("gate operand out of range");
        }
        if (is_two_qubit(g.kind) && g.q0 == g.q1) {
            throw ValidationError("two-qubit gate with identical operands");
        }
        if (g.kind == GateKind::MEASURE) {
            measured[g.q0] = true;
        } else if (measured[g.q0] || (is_two_qubit(g.kind) && measured[g.q1])) {
            throw ValidationError("gate after MEASURE on the same qubit");
        }
    }
}

Layout::Layout(std::vector<qubit_t> physical) : physical_(std::move(physical)) {
    std::set<qubit_t> seen(physical_.begin(), physical_.end());
    if (seen.size() != physical_.size()) {
        throw ValidationError("layout maps two logical qubits to one physical qubit");
    }
}

qubit_t Layout::physical(uint32_t logical) const {
    if (logical >= physical_.size()) {
        throw LayoutIncomplete("layout has no entry for logical qubit " + std::to_string(logical));
    }
    return physical_[logical];
}

std::vector<qubit_t> Layout::footprint() const {
    std::vector<qubit_t> fp = physical_;
    std::sort(fp.begin(), fp.end());
    return fp;
}

void Layout::check_fits(const DeviceTopology& topo) const {
    for (qubit_t p : physical_) {
        if (p >= topo.num_qubits()) {
            throw DeviceOverflow("layout uses physical qubit " + std::to_string(p) +
                                 " beyond device size " + std::to_string(topo.num_qubits()));
        }
    }
}

std::vector<std::pair<size_t, size_t>> MultiTenantProgram::interleaved_gates() const {
    std::vector<std::pair<size_t, size_t>> order;
    size_t longest = 0;
    for (const Tenant& t : tenants) longest = std::max(longest, t.circuit.gates.size());
    for (size_t g = 0; g < longest; g++) {
        for (size_t t = 0; t < tenants.size(); t++) {
            if (g < tenants[t].circuit.gates.size()) order.emplace_back(t, g);
        }
    }
    return order;
}

LogicalCircuit grover_2q(const std::string& marked) {
    if (marked.size() != 2 || marked.find_first_not_of("01") != std::string::npos) {
        throw InvalidBitstring("Grover marked state must be a 2-bit string, got \"" + marked +
                               "\"");
    }

    LogicalCircuit c;
    c.num_qubits = 2;
    c.expected_output = marked;

    auto conjugated_cz = [&](bool flip0, bool flip1) {
        if (flip0) c.gates.push_back(Gate::x(0));
        if (flip1) c.gates.push_back(Gate::x(1));
        c.gates.push_back(Gate::cz(0, 1));
        if (flip0) c.gates.push_back(Gate::x(0));
        if (flip1) c.gates.push_back(Gate::x(1));
    };

    c.gates.push_back(Gate::h(0));
    c.gates.push_back(Gate::h(1));
    // Oracle: phase-flip the marked state (CZ conjugated by X on the 0 bits).
    conjugated_cz(marked[0] == '0', marked[1] == '0');
    // Diffusion: reflect about the uniform state.
    c.gates.push_back(Gate::h(0));
    c.gates.push_back(Gate::h(1));
    conjugated_cz(true, true);
    c.gates.push_back(Gate::h(0));
    c.gates.push_back(Gate::h(1));
    c.gates.push_back(Gate::measure(0));
    c.gates.push_back(Gate::measure(1));
    return c;
}

LogicalCircuit simon(const std::string& hidden_shift) {
    if (hidden_shift.empty()) throw EmptyShift("hidden shift must have at least one bit");
    if (hidden_shift.find_first_not_of("01") != std::string::npos) {
        throw InvalidBitstring("hidden shift must be a bitstring, got \"" + hidden_shift + "\"");
    }
    const auto lowest_set = hidden_shift.find('1');
    if (lowest_set == std::string::npos) {
        throw ZeroShift("hidden shift must not be all zeros");
    }

    const uint32_t n = static_cast<uint32_t>(hidden_shift.size());
    LogicalCircuit c;
    c.num_qubits = 2 * n;
    c.hint = {SamplerHint::Kind::SimonNullSpace, hidden_shift};

    for (uint32_t i = 0; i < n; i++) c.gates.push_back(Gate::h(i));
    // Oracle for f(x) = x XOR (x_k * s), k the lowest set bit of s.
    for (uint32_t i = 0; i < n; i++) c.gates.push_back(Gate::cnot(i, n + i));
    const uint32_t k = static_cast<uint32_t>(lowest_set);
    for (uint32_t j = 0; j < n; j++) {
        if (hidden_shift[j] == '1') c.gates.push_back(Gate::cnot(k, n + j));
    }
    for (uint32_t i = 0; i < n; i++) c.gates.push_back(Gate::h(i));
    for (uint32_t i = 0; i < n; i++) c.gates.push_back(Gate::measure(i));
    return c;
}

LogicalCircuit attacker_cnot() {
    LogicalCircuit c;
    c.num_qubits = 2;
    c.expected_output = "00";
    c.gates = {Gate::cnot(0, 1), Gate::measure(0), Gate::measure(1)};
    return c;
}

LogicalCircuit listening_circuit(uint32_t k) {
    if (k == 0) throw InvalidSize("listening circuit needs at least one qubit");
    LogicalCircuit c;
    c.num_qubits = k;
    c.expected_output = std::string(k, '0');
    c.hint = {SamplerHint::Kind::AllZeros, ""};
    for (uint32_t q = 0; q < k; q++) c.gates.push_back(Gate::measure(q));
    return c;
}

MultiTenantProgram merge_tenants(std::vector<MultiTenantProgram::Tenant> tenants,
                                 const DeviceTopology& device) {
    std::set<qubit_t> claimed;
    for (const auto& tenant : tenants) {
        tenant.circuit.validate();
        if (tenant.layout.num_logical() < tenant.circuit.num_qubits) {
            throw LayoutIncomplete("layout covers fewer qubits than the tenant circuit uses");
        }
        tenant.layout.check_fits(device);
        for (qubit_t p : tenant.layout.physical_qubits()) {
            if (!claimed.insert(p).second) {
                throw OverlapError("tenant footprints overlap on physical qubit " +
                                   std::to_string(p));
            }
        }
    }
    MultiTenantProgram program;
    program.tenants = std::move(tenants);
    program.device = &device;
    return program;
}

LogicalCircuit load_circuit(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open circuit file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("malformed circuit file " + path + ": " + e.what());
    }

    try {
        LogicalCircuit c;
        c.num_qubits = doc.at("num_qubits").get<uint32_t>();
        for (const auto& spec : doc.at("gates")) {
            const std::string name = spec.at(0).get<std::string>();
            auto operand = [&](size_t i) { return spec.at(i).get<uint32_t>(); };
            if (name == "h") c.gates.push_back(Gate::h(operand(1)));
            else if (name == "x") c.gates.push_back(Gate::x(operand(1)));
            else if (name == "z") c.gates.push_back(Gate::z(operand(1)));
            else if (name == "cz") c.gates.push_back(Gate::cz(operand(1), operand(2)));
            else if (name == "cnot") c.gates.push_back(Gate::cnot(operand(1), operand(2)));
            else if (name == "swap") c.gates.push_back(Gate::swap(operand(1), operand(2)));
            else if (name == "measure") c.gates.push_back(Gate::measure(operand(1)));
            else throw ParseError("unknown gate \"" + name + "\" in " + path);
        }
        if (doc.contains("expected")) c.expected_output = doc.at("expected").get<std::string>();
        c.validate();
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("malformed circuit file " + path + ": " + e.what());
    }
}

}  // namespace xtalk
