#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "vnmlab/gates.hpp"
#include "vnmlab/oracles.hpp"
#include "vnmlab/statecore.hpp"

#include "test_support.hpp"

using namespace vnmlab;
using testsupport::max_amp_diff;
using testsupport::random_state;
using testsupport::sparse_state;

namespace {
constexpr double kRoot2Inv = 0.70710678118654752440;
}

TEST_CASE("hadamard on basis states") {
    const RegisterLayout one_qubit({{"X", 1}});
    const PureState plus = hadamard(prepare(one_qubit, {{"X", 0}}), "X");
    CHECK(std::abs(plus.amplitude_at(0) - kRoot2Inv) < 1e-15);
    CHECK(std::abs(plus.amplitude_at(1) - kRoot2Inv) < 1e-15);

    const PureState minus = hadamard(prepare(one_qubit, {{"X", 1}}), "X");
    CHECK(std::abs(minus.amplitude_at(0) - kRoot2Inv) < 1e-15);
    CHECK(std::abs(minus.amplitude_at(1) + kRoot2Inv) < 1e-15);

    // two qubits: signs follow the AND-parity (-1)^{x̄·x}
    const RegisterLayout two_qubit({{"X", 2}});
    const PureState from_three = hadamard(prepare(two_qubit, {{"X", 3}}), "X");
    const PureState expected = sparse_state(two_qubit, {{0, 0.5}, {1, -0.5}, {2, -0.5}, {3, 0.5}});
    CHECK(max_amp_diff(from_three, expected) < 1e-15);
}

TEST_CASE("hadamard is an involution and preserves norm") {
    const RegisterLayout layout({{"X", 3}, {"F", 2}});
    RandomSource rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const PureState psi = random_state(layout, rng);
        const PureState once = hadamard(psi, "X");
        CHECK(std::abs(once.norm() - 1.0) < 1e-12);
        CHECK(max_amp_diff(hadamard(once, "X"), psi) < 1e-12);
    }
    CHECK_THROWS_AS(hadamard(random_state(layout, rng), "Q"), UnknownRegister);
}

TEST_CASE("hadamard only touches the named register") {
    const RegisterLayout layout({{"X", 1}, {"F", 1}});
    const PureState out = hadamard(prepare(layout, {{"X", 0}, {"F", 1}}), "X");
    CHECK(std::abs(out.amplitude_at(1) - kRoot2Inv) < 1e-15); // |0,1>
    CHECK(std::abs(out.amplitude_at(3) - kRoot2Inv) < 1e-15); // |1,1>
    CHECK(std::abs(out.amplitude_at(0)) < 1e-15);
    CHECK(std::abs(out.amplitude_at(2)) < 1e-15);
}

TEST_CASE("oracle_apply XORs the table value into the target") {
    const RegisterLayout layout({{"X", 2}, {"F", 2}});
    OracleFunction oracle = make_xor_periodic_sequential(2, 2); // table [0,1,0,1]

    const PureState in1 = prepare(layout, {{"X", 1}, {"F", 0}});
    const PureState out1 = oracle_apply(in1, oracle, "X", "F");
    CHECK(out1.amplitude_at(5) == Complex(1.0)); // |1, f(1)=1>
    CHECK(oracle.quantum_invocations == 1);

    const PureState in2 = prepare(layout, {{"X", 2}, {"F", 0}});
    const PureState out2 = oracle_apply(in2, oracle, "X", "F");
    CHECK(out2.amplitude_at(8) == Complex(1.0)); // f(2) = 0, unchanged
    CHECK(oracle.quantum_invocations == 2);

    // XOR semantics: already-set target bits flip
    const PureState in3 = prepare(layout, {{"X", 1}, {"F", 3}});
    const PureState out3 = oracle_apply(in3, oracle, "X", "F");
    CHECK(out3.amplitude_at(global_index(layout, {{"X", 1}, {"F", 2}})) == Complex(1.0));
    CHECK(oracle.classical_queries == 0);
}

TEST_CASE("oracle_apply is self-inverse on superpositions") {
    const RegisterLayout layout({{"X", 3}, {"F", 3}});
    RandomSource rng(77);
    OracleFunction oracle = make_xor_periodic(3, 5, rng);
    const PureState psi = random_state(layout, rng);
    const PureState twice = oracle_apply(oracle_apply(psi, oracle, "X", "F"), oracle, "X", "F");
    CHECK(max_amp_diff(twice, psi) < 1e-12);
    CHECK(oracle.quantum_invocations == 2);
}

TEST_CASE("oracle_apply width checks") {
    const RegisterLayout layout({{"X", 2}, {"F", 1}});
    OracleFunction oracle = make_xor_periodic_sequential(2, 2); // out_bits = 2
    const PureState psi = prepare(layout, {{"X", 0}, {"F", 0}});
    CHECK_THROWS_AS(oracle_apply(psi, oracle, "X", "F"), WidthMismatch);
    OracleFunction one_bit = grover_oracle(2, 2);
    CHECK_THROWS_AS(oracle_apply(psi, one_bit, "F", "X"), WidthMismatch);
}

TEST_CASE("multi-register oracle input reads mode then argument") {
    const RegisterLayout layout({{"K", 2}, {"X", 1}, {"F", 1}});
    OracleFunction gate = make_deutsch_extended();
    const std::vector<std::string> inputs{"K", "X"};

    // f_2(0) = 1: |k=2, x=0, f=0> -> |k=2, x=0, f=1>
    const PureState out =
        oracle_apply(prepare(layout, {{"K", 2}, {"X", 0}, {"F", 0}}), gate, inputs, "F");
    CHECK(out.amplitude_at(global_index(layout, {{"K", 2}, {"X", 0}, {"F", 1}})) == Complex(1.0));

    // f_0 is the constant 0: nothing happens
    const PureState idle =
        oracle_apply(prepare(layout, {{"K", 0}, {"X", 1}, {"F", 0}}), gate, inputs, "F");
    CHECK(idle.amplitude_at(global_index(layout, {{"K", 0}, {"X", 1}, {"F", 0}})) == Complex(1.0));
    CHECK(gate.quantum_invocations == 2);

    const std::vector<std::string> wrong{"X", "K"}; // target K is 2 bits, gate emits 1
    CHECK_THROWS_AS(
        oracle_apply(prepare(layout, {{"K", 0}, {"X", 0}, {"F", 0}}), gate, wrong, "K"),
        WidthMismatch);
}

TEST_CASE("dft matches the analytic kernel") {
    const RegisterLayout layout({{"X", 2}});
    const PureState from_zero = dft(prepare(layout, {{"X", 0}}), "X");
    for (std::uint64_t z = 0; z < 4; ++z)
        CHECK(std::abs(from_zero.amplitude_at(z) - 0.5) < 1e-14);

    // |1> -> (1/2) sum_z i^z |z>
    const PureState from_one = dft(prepare(layout, {{"X", 1}}), "X");
    const PureState expected = sparse_state(
        layout, {{0, 0.5}, {1, Complex(0.0, 0.5)}, {2, -0.5}, {3, Complex(0.0, -0.5)}});
    CHECK(max_amp_diff(from_one, expected) < 1e-14);
}

TEST_CASE("dft_inverse undoes dft") {
    const RegisterLayout layout({{"X", 4}, {"F", 2}});
    RandomSource rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const PureState psi = random_state(layout, rng);
        CHECK(max_amp_diff(dft_inverse(dft(psi, "X"), "X"), psi) < 1e-12);
        CHECK(std::abs(dft(psi, "X").norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("dft fixed point of the two-term comb") {
    // (1/sqrt(2))(|0> + |2>) on 2 qubits maps to (1/sqrt(2))(|0> + |2>)
    const RegisterLayout layout({{"X", 2}});
    const PureState comb = sparse_state(layout, {{0, kRoot2Inv}, {2, kRoot2Inv}});
    CHECK(max_amp_diff(dft(comb, "X"), comb) < 1e-14);
}

TEST_CASE("phase_mask") {
    const RegisterLayout layout({{"X", 1}, {"F", 1}});
    const std::vector<double> flip{0.0, std::numbers::pi};
    const PureState psi = sparse_state(layout, {{1, kRoot2Inv}, {2, kRoot2Inv}});
    const PureState out = phase_mask(psi, "F", flip);
    CHECK(std::abs(out.amplitude_at(1) + kRoot2Inv) < 1e-12); // f=1 picks up -1
    CHECK(std::abs(out.amplitude_at(2) - kRoot2Inv) < 1e-12); // f=0 untouched

    const std::vector<double> quarter{0.0, std::numbers::pi / 2.0};
    const PureState rotated = phase_mask(psi, "F", quarter);
    CHECK(std::abs(rotated.amplitude_at(1) - Complex(0.0, kRoot2Inv)) < 1e-12);

    const std::vector<double> too_short{0.0};
    CHECK_THROWS_AS(phase_mask(psi, "X", too_short), WidthMismatch);
    CHECK_THROWS_AS(phase_mask(psi, "Q", flip), UnknownRegister);
}

TEST_CASE("GateOp apply / apply_inverse round trip") {
    const RegisterLayout layout({{"X", 2}, {"F", 2}});
    OracleFunction oracle = make_xor_periodic_sequential(2, 2);
    std::vector<GateOp> ops;
    ops.push_back(GateOp::make_hadamard("X"));
    ops.push_back(GateOp::make_oracle(oracle, {"X"}, "F"));
    ops.push_back(GateOp::make_dft("X"));
    ops.push_back(GateOp::make_phase_mask("F", {0.0, 0.4, 1.1, 2.7}));

    RandomSource rng(99);
    const PureState psi = random_state(layout, rng);
    PureState walked = psi;
    for (const GateOp& op : ops) walked = apply(walked, op);
    CHECK(oracle.quantum_invocations == 1);

    for (auto it = ops.rbegin(); it != ops.rend(); ++it) walked = apply_inverse(walked, *it);
    CHECK(max_amp_diff(walked, psi) < 1e-12);
    // backdating analysis must not bill the oracle
    CHECK(oracle.quantum_invocations == 1);
}

TEST_CASE("the prepare -> hadamard -> oracle pipeline hits the Eq. (2) instance") {
    const RegisterLayout layout({{"X", 2}, {"F", 2}});
    OracleFunction oracle = make_xor_periodic_sequential(2, 2);
    const PureState t1 = hadamard(prepare(layout, {{"X", 0}, {"F", 0}}), "X");
    const PureState t2 = oracle_apply(t1, oracle, "X", "F");
    const PureState expected =
        sparse_state(layout, {{0, 0.5}, {5, 0.5}, {8, 0.5}, {13, 0.5}});
    CHECK(max_amp_diff(t2, expected) < 1e-14);
}
