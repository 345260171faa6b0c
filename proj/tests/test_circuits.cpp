#include <set>

#include "doctest.h"
#include "xtalk/circuits.hpp"
#include "xtalk/errors.hpp"
#include "xtalk/statevector.hpp"
#include "xtalk/topology.hpp"

using namespace xtalk;

namespace {

// Classical propagation of the oracle section (CNOTs between the registers)
// to extract f(x) as a truth table.
std::vector<uint64_t> extract_simon_truth_table(const LogicalCircuit& circuit, uint32_t n) {
    std::vector<uint64_t> table(uint64_t{1} << n, 0);
    for (uint64_t x = 0; x < table.size(); x++) {
        std::vector<int> bits(2 * n, 0);
        for (uint32_t i = 0; i < n; i++) bits[i] = (x >> i) & 1;
        for (const Gate& g : circuit.gates) {
            if (g.kind == GateKind::CNOT) bits[g.q1] ^= bits[g.q0];
        }
        uint64_t y = 0;
        for (uint32_t i = 0; i < n; i++) {
            if (bits[n + i]) y |= uint64_t{1} << i;
        }
        table[x] = y;
    }
    return table;
}

uint64_t bits_to_int(const std::string& s) {
    uint64_t v = 0;
    for (size_t i = 0; i < s.size(); i++) {
        if (s[i] == '1') v |= uint64_t{1} << i;
    }
    return v;
}

int dot2(const std::string& a, const std::string& b) {
    int acc = 0;
    for (size_t i = 0; i < a.size(); i++) {
        acc ^= (a[i] == '1' && b[i] == '1') ? 1 : 0;
    }
    return acc;
}

}  // namespace

TEST_CASE("grover_2q produces the marked state with probability 1") {
    for (const std::string marked : {"00", "01", "10", "11"}) {
        const LogicalCircuit c = grover_2q(marked);
        CHECK(c.num_qubits == 2);
        CHECK(c.expected_output == marked);

        StateVector sv(2);
        sv.apply_circuit(c);
        const auto dist = sv.measured_distribution(c.measured_qubits());
        REQUIRE(dist.size() == 1);
        CHECK(dist.begin()->first == marked);
        CHECK(dist.begin()->second == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(grover_2q("2x"), InvalidBitstring);
    CHECK_THROWS_AS(grover_2q("111"), InvalidBitstring);
}

TEST_CASE("simon constructor validation") {
    CHECK_THROWS_AS(simon(""), EmptyShift);
    CHECK_THROWS_AS(simon("000"), ZeroShift);
    CHECK_THROWS_AS(simon("01x"), InvalidBitstring);
    CHECK(simon("111").num_qubits == 6);
    CHECK(simon("1").num_qubits == 2);
}

TEST_CASE("simon outcomes satisfy z.s = 0 and span the orthogonal space") {
    for (const std::string s : {"1", "10", "111", "0101", "11001"}) {
        const uint32_t n = static_cast<uint32_t>(s.size());
        const LogicalCircuit c = simon(s);

        StateVector sv(c.num_qubits);
        sv.apply_circuit(c);
        const auto dist = sv.measured_distribution(c.measured_qubits());

        std::set<std::string> support;
        for (const auto& [z, p] : dist) {
            CHECK(dot2(z, s) == 0);
            CHECK(p > 1e-9);
            support.insert(z);
        }
        // Noiseless Simon output is uniform over the whole null space of s.
        CHECK(support.size() == (uint64_t{1} << (n - 1)));
        for (const auto& [z, p] : dist) {
            CHECK(p == doctest::Approx(1.0 / static_cast<double>(support.size())).epsilon(1e-9));
        }
    }
}

TEST_CASE("simon oracle is a valid two-to-one function with period s") {
    for (const std::string s : {"1", "10", "111", "1011", "010010"}) {
        const uint32_t n = static_cast<uint32_t>(s.size());
        const LogicalCircuit c = simon(s);
        const std::vector<uint64_t> f = extract_simon_truth_table(c, n);
        const uint64_t shift = bits_to_int(s);

        std::set<uint64_t> image(f.begin(), f.end());
        CHECK(image.size() == f.size() / 2);  // two-to-one
        for (uint64_t x = 0; x < f.size(); x++) {
            CHECK(f[x] == f[x ^ shift]);
            for (uint64_t x2 = x + 1; x2 < f.size(); x2++) {
                if (f[x] == f[x2]) CHECK(x2 == (x ^ shift));
            }
        }
    }
}

TEST_CASE("attacker_cnot is a single CNOT plus measurement") {
    const LogicalCircuit c = attacker_cnot();
    REQUIRE(c.gates.size() == 3);
    CHECK(c.gates[0] == Gate::cnot(0, 1));
    CHECK(c.gates[1] == Gate::measure(0));
    CHECK(c.gates[2] == Gate::measure(1));
    CHECK(c.expected_output == "00");

    StateVector sv(2);
    sv.apply_circuit(c);
    const auto dist = sv.measured_distribution(c.measured_qubits());
    REQUIRE(dist.size() == 1);
    CHECK(dist.begin()->first == "00");
}

TEST_CASE("listening_circuit") {
    CHECK_THROWS_AS(listening_circuit(0), InvalidSize);

    const LogicalCircuit small = listening_circuit(4);
    CHECK(small.num_qubits == 4);
    CHECK(small.expected_output == "0000");

    const LogicalCircuit big = listening_circuit(63);
    CHECK(big.num_qubits == 63);
    CHECK(big.gates.size() == 63);
    for (const Gate& g : big.gates) CHECK(g.kind == GateKind::MEASURE);

    StateVector sv(1);
    sv.apply_circuit(listening_circuit(1));
    const auto dist = sv.measured_distribution({0});
    REQUIRE(dist.size() == 1);
    CHECK(dist.begin()->first == "0");
}

TEST_CASE("merge_tenants composition and errors") {
    const DeviceTopology hex = build_heavy_hex(127);

    SUBCASE("victim at 63/64 plus attacker at 0/69 is valid") {
        const MultiTenantProgram p = merge_tenants(
            {{grover_2q("11"), Layout({63, 64})}, {attacker_cnot(), Layout({0, 69})}}, hex);
        CHECK(p.tenants.size() == 2);
    }
    SUBCASE("overlapping footprints are rejected") {
        CHECK_THROWS_AS(merge_tenants({{grover_2q("11"), Layout({5, 6})},
                                       {attacker_cnot(), Layout({5, 9})}},
                                      hex),
                        OverlapError);
    }
    SUBCASE("layouts beyond the device are rejected") {
        CHECK_THROWS_AS(
            merge_tenants({{attacker_cnot(), Layout({126, 127})}}, hex),
            DeviceOverflow);
    }
    SUBCASE("even victim plus odd listeners covers all 127 qubits") {
        std::vector<qubit_t> evens, odds;
        for (qubit_t q = 0; q < 127; q += 2) evens.push_back(q);
        for (qubit_t q = 1; q < 127; q += 2) odds.push_back(q);
        REQUIRE(evens.size() == 64);
        REQUIRE(odds.size() == 63);
        const MultiTenantProgram p = merge_tenants(
            {{simon(std::string(32, '1')), Layout(evens)}, {listening_circuit(63), Layout(odds)}},
            hex);
        CHECK(p.tenants.size() == 2);
    }
    SUBCASE("round-robin interleaving by gate index") {
        LogicalCircuit a;
        a.num_qubits = 1;
        a.gates = {Gate::x(0), Gate::measure(0)};
        LogicalCircuit b;
        b.num_qubits = 1;
        b.gates = {Gate::h(0), Gate::z(0), Gate::measure(0)};
        const MultiTenantProgram p =
            merge_tenants({{a, Layout({0})}, {b, Layout({1})}}, hex);
        const auto order = p.interleaved_gates();
        const std::vector<std::pair<size_t, size_t>> want{
            {0, 0}, {1, 0}, {0, 1}, {1, 1}, {1, 2}};
        CHECK(order == want);
    }
}

TEST_CASE("circuit validation catches bad gate streams") {
    LogicalCircuit c;
    c.num_qubits = 2;
    c.gates = {Gate::measure(0), Gate::h(0)};
    CHECK_THROWS_AS(c.validate(), ValidationError);

    LogicalCircuit oob;
    oob.num_qubits = 2;
    oob.gates = {Gate::cnot(0, 2)};
    CHECK_THROWS_AS(oob.validate(), IndexOutOfRange);
}
