#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <vector>

#include "vnmlab/algorithms.hpp"
#include "vnmlab/measure.hpp"
#include "vnmlab/oracles.hpp"
#include "vnmlab/statecore.hpp"

#include "test_support.hpp"

using namespace vnmlab;
using testsupport::max_amp_diff;
using testsupport::sparse_state;

namespace {

constexpr double kRoot2Inv = 0.70710678118654752440;
constexpr double kQuarterRoot2 = 0.35355339059327376220; // 1/(2*sqrt(2))

bool labels_are_canonical(const RunTrace& trace) {
    const std::vector<std::string> expected{"t0", "t1", "t2", "t3", "t4"};
    if (trace.states.size() != expected.size()) return false;
    for (size_t i = 0; i < expected.size(); ++i)
        if (trace.states[i].label != expected[i]) return false;
    return true;
}

} // namespace

TEST_CASE("simon_run on the worked instance") {
    OracleFunction oracle = make_xor_periodic_sequential(2, 2);
    const RunTrace trace = simon_run(oracle, true, 7);
    CHECK(trace.algorithm == "simon");
    CHECK(trace.seed == 7);
    CHECK(labels_are_canonical(trace));
    CHECK(trace.oracle_invocations == 1);
    REQUIRE(trace.measurements.size() == 2);

    const RegisterLayout layout = trace.states[0].state.layout();
    const PureState expected_t2 =
        sparse_state(layout, {{0, 0.5}, {5, 0.5}, {8, 0.5}, {13, 0.5}});
    CHECK(max_amp_diff(trace.states[2].state, expected_t2) < 1e-14);

    const MeasurementRecord& f_rec = trace.measurements[0];
    const MeasurementRecord& z_rec = trace.measurements[1];
    CHECK(f_rec.reg == "F");
    CHECK(z_rec.reg == "X");
    CHECK(f_rec.probability == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(z_rec.probability == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(and_parity(2, z_rec.outcome) == 0); // r . z even

    // t3 is the conditioned state for whichever f was drawn
    if (f_rec.outcome == 1) {
        const PureState t3 = sparse_state(layout, {{5, kRoot2Inv}, {13, kRoot2Inv}});
        CHECK(max_amp_diff(trace.states[3].state, t3) < 1e-12);
    } else {
        const PureState t3 = sparse_state(layout, {{0, kRoot2Inv}, {8, kRoot2Inv}});
        CHECK(max_amp_diff(trace.states[3].state, t3) < 1e-12);
    }
}

TEST_CASE("simon_run without the intermediate measurement") {
    OracleFunction oracle = make_xor_periodic_sequential(2, 2);
    const RunTrace trace = simon_run(oracle, false, 3);
    REQUIRE(trace.measurements.size() == 1);
    CHECK(trace.measurements[0].reg == "X");
    CHECK(labels_are_canonical(trace));
    // t3 aliases t2 when no measurement interrupts the pipeline
    CHECK(max_amp_diff(trace.states[3].state, trace.states[2].state) == 0.0);

    // t4 is the entangled final state of the deferred pipeline
    const RegisterLayout layout = trace.states[0].state.layout();
    const PureState expected_t4 =
        sparse_state(layout, {{0, 0.5}, {4, 0.5}, {1, 0.5}, {5, -0.5}});
    CHECK(max_amp_diff(trace.states[4].state, expected_t4) < 1e-14);
}

TEST_CASE("simon_run rejects foreign oracle families") {
    OracleFunction wrong = make_modexp(2, 15, 4);
    CHECK_THROWS_AS(simon_run(wrong, true, 1), FamilyMismatch);
    CHECK_THROWS_AS(simon_solve_r(wrong, 1, 8), FamilyMismatch);
}

TEST_CASE("the constraint r . z = 0 holds for every run") {
    RandomSource oracle_rng(404);
    for (int n = 2; n <= 6; ++n) {
        const std::uint64_t size = std::uint64_t{1} << n;
        const std::uint64_t r = 1 + oracle_rng.uniform_below(size - 1);
        OracleFunction oracle = make_xor_periodic(n, r, oracle_rng);
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const RunTrace trace = simon_run(oracle, seed % 2 == 0, seed);
            CHECK(and_parity(r, trace.measurements.back().outcome) == 0);
            CHECK(trace.oracle_invocations == 1);
        }
    }
}

TEST_CASE("simon_sample_z reproduces the full pipeline's draws") {
    RandomSource oracle_rng(1001);
    for (int n = 2; n <= 5; ++n) {
        const std::uint64_t size = std::uint64_t{1} << n;
        const std::uint64_t r = 1 + oracle_rng.uniform_below(size - 1);
        for (std::uint64_t seed = 100; seed < 115; ++seed) {
            OracleFunction full_oracle = make_xor_periodic(n, r, oracle_rng);
            OracleFunction fast_oracle = full_oracle;

            const RunTrace trace = simon_run(full_oracle, true, seed);
            RandomSource rng(seed);
            const SimonSample sample = simon_sample_z(fast_oracle, rng);
            CHECK(sample.f_bar == trace.measurements[0].outcome);
            CHECK(sample.z_bar == trace.measurements[1].outcome);
            CHECK(fast_oracle.quantum_invocations == full_oracle.quantum_invocations);
        }
    }
}

TEST_CASE("deferred-measurement equivalence of the final distribution") {
    RandomSource oracle_rng(77);
    for (int n = 2; n <= 5; ++n) {
        const std::uint64_t size = std::uint64_t{1} << n;
        for (int trial = 0; trial < 5; ++trial) {
            const std::uint64_t r = 1 + oracle_rng.uniform_below(size - 1);
            OracleFunction oracle = make_xor_periodic(n, r, oracle_rng);
            const OutcomeDistribution with = simon_final_distribution(oracle, true);
            const OutcomeDistribution without = simon_final_distribution(oracle, false);
            CHECK(tv_distance(with, without) < 1e-12);
            for (const auto& [z, p] : without) CHECK(and_parity(r, z) == 0);
        }
    }
}

TEST_CASE("simon_solve_r recovers the hidden period") {
    OracleFunction table_i = make_xor_periodic_sequential(2, 2);
    const SimonSolveResult easy = simon_solve_r(table_i, 5, 32);
    CHECK(easy.r == 2);
    CHECK(easy.runs_used <= 32);

    RandomSource oracle_rng(31337);
    for (int n = 2; n <= 6; ++n) {
        const std::uint64_t size = std::uint64_t{1} << n;
        for (int trial = 0; trial < 10; ++trial) {
            const std::uint64_t r = 1 + oracle_rng.uniform_below(size - 1);
            OracleFunction oracle = make_xor_periodic(n, r, oracle_rng);
            QueryLedger ledger;
            const SimonSolveResult got =
                simon_solve_r(oracle, oracle_rng.raw(), 16 * n, &ledger);
            CHECK(got.r == r);
            CHECK(ledger.quantum_runs == got.runs_used);
            CHECK(ledger.quantum_invocations == got.runs_used);
            CHECK(ledger.measurement_cost_units == got.runs_used * 2 * n);
            CHECK(ledger.classical_queries == 0);
        }
    }

    OracleFunction starved = make_xor_periodic_sequential(3, 5);
    CHECK_THROWS_AS(simon_solve_r(starved, 1, 0), InsufficientConstraints);
}

TEST_CASE("multiplicative_order modulo 15") {
    CHECK(multiplicative_order(2, 15) == 4);
    CHECK(multiplicative_order(4, 15) == 2);
    CHECK(multiplicative_order(7, 15) == 4);
    CHECK(multiplicative_order(8, 15) == 4);
    CHECK(multiplicative_order(11, 15) == 2);
    CHECK(multiplicative_order(13, 15) == 4);
    CHECK(multiplicative_order(14, 15) == 2);
    CHECK_THROWS_AS(multiplicative_order(3, 15), NotCoprime);
}

TEST_CASE("shor_period_run produces the comb and its transform") {
    const RunTrace trace = shor_period_run(7, 15, 4, 11);
    CHECK(trace.algorithm == "shor");
    CHECK(labels_are_canonical(trace));
    CHECK(trace.oracle_invocations == 1);
    REQUIRE(trace.measurements.size() == 2);
    CHECK(trace.measurements[0].reg == "F");
    CHECK(trace.measurements[1].reg == "X");

    // t3: measuring F leaves a comb of 4 arguments with spacing r = 4
    const OutcomeDistribution comb = born_distribution(trace.states[3].state, "X");
    REQUIRE(comb.size() == 4);
    const std::uint64_t x0 = comb.begin()->first;
    for (const auto& [x, p] : comb) {
        CHECK((x - x0) % 4 == 0);
        CHECK(p == doctest::Approx(0.25).epsilon(1e-12));
    }

    // t4: the DFT concentrates on multiples of N / r = 4, each exactly 1/r
    const OutcomeDistribution peaks = born_distribution(trace.states[4].state, "X");
    REQUIRE(peaks.size() == 4);
    for (const auto& [z, p] : peaks) {
        CHECK(z % 4 == 0);
        CHECK(p == doctest::Approx(0.25).epsilon(1e-12));
    }
    CHECK(trace.measurements[1].outcome % 4 == 0);

    // r = 2 instance: peaks at 0 and 8
    const RunTrace half = shor_period_run(4, 15, 4, 2);
    const OutcomeDistribution two_peaks = born_distribution(half.states[4].state, "X");
    REQUIRE(two_peaks.size() == 2);
    CHECK(two_peaks.at(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(two_peaks.at(8) == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_AS(shor_period_run(3, 15, 4, 1), NotCoprime);
    CHECK_THROWS_AS(shor_period_run(2, 9, 4, 1), UnsupportedInstance); // r = 6 divides no 2^n
}

TEST_CASE("shor_extract_period") {
    const std::vector<std::uint64_t> pair{4, 12};
    CHECK(shor_extract_period(pair, 16) == 4);
    const std::vector<std::uint64_t> lucky{12};
    CHECK(shor_extract_period(lucky, 16) == 4);
    const std::vector<std::uint64_t> single{8};
    CHECK(shor_extract_period(single, 16) == 2);
    const std::vector<std::uint64_t> zeros{0, 0};
    CHECK_THROWS_AS(shor_extract_period(zeros, 16), Inconclusive);
}

TEST_CASE("deutsch_standard_run is deterministic with one invocation") {
    // (k, expected outcome, t4 amplitude signs at (x, f=0) and (x, f=1))
    struct Expected {
        int k;
        std::uint64_t outcome;
        double amp0, amp1; // amplitudes at x = outcome, f = 0 / 1
    };
    const Expected table[] = {
        {0, 0, kRoot2Inv, -kRoot2Inv},
        {1, 1, kRoot2Inv, -kRoot2Inv},
        {2, 1, -kRoot2Inv, kRoot2Inv},
        {3, 0, -kRoot2Inv, kRoot2Inv},
    };
    for (const Expected& e : table) {
        const RunTrace trace = deutsch_standard_run(e.k, 99);
        CHECK(trace.algorithm == "deutsch");
        CHECK(labels_are_canonical(trace));
        CHECK(trace.oracle_invocations == 1);
        REQUIRE(trace.measurements.size() == 1);
        CHECK(trace.measurements[0].outcome == e.outcome);
        CHECK(trace.measurements[0].probability == doctest::Approx(1.0).epsilon(1e-12));
        CHECK((e.outcome == 1) == deutsch_balanced(e.k));

        const PureState& t4 = trace.states[4].state;
        const RegisterLayout& layout = t4.layout();
        const std::uint64_t g0 = global_index(layout, {{"X", e.outcome}, {"F", 0}});
        const std::uint64_t g1 = global_index(layout, {{"X", e.outcome}, {"F", 1}});
        CHECK(std::abs(t4.amplitude_at(g0) - e.amp0) < 1e-12);
        CHECK(std::abs(t4.amplitude_at(g1) - e.amp1) < 1e-12);
    }

    // k = 0 and k = 3 final states differ only by the recorded global phase
    const PureState a = deutsch_standard_run(0, 1).states[4].state;
    const PureState b = deutsch_standard_run(3, 1).states[4].state;
    CHECK(fidelity_up_to_phase(a, b) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(max_amp_diff(a, b) > 1.0); // raw sign flip is visible in the trace
}

TEST_CASE("deutsch_extended_run at zero phases lands on the Eq. (11) state") {
    const RunTrace trace = deutsch_extended_run(42, std::array<double, 3>{0.0, 0.0, 0.0});
    CHECK(trace.algorithm == "deutsch_extended");
    CHECK(trace.oracle_invocations == 1);
    const RegisterLayout layout = trace.states[4].state.layout();
    const PureState expected = sparse_state(layout, {
        {0, kQuarterRoot2},   {1, -kQuarterRoot2},
        {6, kQuarterRoot2},   {7, -kQuarterRoot2},
        {10, -kQuarterRoot2}, {11, kQuarterRoot2},
        {12, -kQuarterRoot2}, {13, kQuarterRoot2},
    });
    CHECK(max_amp_diff(trace.states[4].state, expected) < 1e-14);
}

TEST_CASE("deutsch_extended_run pairs the mode with its balanced indicator") {
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        const RunTrace trace = deutsch_extended_run(seed);
        REQUIRE(trace.measurements.size() == 2);
        CHECK(trace.measurements[0].reg == "K");
        CHECK(trace.measurements[1].reg == "X");
        const std::uint64_t k = trace.measurements[0].outcome;
        const std::uint64_t x = trace.measurements[1].outcome;
        CHECK(x == (deutsch_balanced(static_cast<int>(k)) ? 1 : 0));
        CHECK(trace.oracle_invocations == 1);
        CHECK(trace.measurements[0].probability == doctest::Approx(0.25).epsilon(1e-9));
    }
}

TEST_CASE("grover_run standard finds the target with certainty") {
    for (std::uint64_t k = 0; k < 4; ++k) {
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            const RunTrace trace = grover_run(k, false, seed);
            CHECK(trace.algorithm == "grover");
            CHECK(labels_are_canonical(trace));
            CHECK(trace.oracle_invocations == 1);
            REQUIRE(trace.measurements.size() == 1);
            CHECK(trace.measurements[0].outcome == k);
            CHECK(trace.measurements[0].probability == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(grover_run(4, false, 1), InvalidLabel);
    CHECK_THROWS_AS(grover_run(1, false, 1, 3), UnsupportedInstance);
}

TEST_CASE("grover_run extended correlates target and argument") {
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        const RunTrace trace = grover_run(0, true, seed);
        CHECK(trace.algorithm == "grover_extended");
        REQUIRE(trace.measurements.size() == 2);
        CHECK(trace.measurements[0].reg == "K");
        CHECK(trace.measurements[1].reg == "X");
        CHECK(trace.measurements[0].outcome == trace.measurements[1].outcome);
        CHECK(trace.oracle_invocations == 1);
    }
}

TEST_CASE("speedup_report rows") {
    const std::vector<ReportRow> rows = speedup_report(2, 4, 8);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].n == 2);
    CHECK(rows[0].classical_worst == 3);
    CHECK(rows[1].classical_worst == 5);
    CHECK(rows[2].classical_worst == 9);
    for (const ReportRow& row : rows) {
        CHECK(row.quantum_invocations <= 4.0 * row.n);
        CHECK(row.quantum_invocations >= 1.0);
        CHECK(row.classical_avg > 1.0);
        CHECK(row.measurement_units ==
              doctest::Approx(row.quantum_invocations * 2 * row.n).epsilon(1e-12));
    }
}
