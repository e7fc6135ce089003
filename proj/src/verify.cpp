#include "vnmlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "vnmlab/algorithms.hpp"
#include "vnmlab/gates.hpp"
#include "vnmlab/measure.hpp"
#include "vnmlab/oracles.hpp"
#include "vnmlab/statecore.hpp"
#include "vnmlab/trace_json.hpp"

namespace vnmlab {

namespace {

constexpr std::uint64_t kVerifySeed = 0x76657269667921ULL;

/// Haar-ish random state: i.i.d. complex normal amplitudes, normalized.
PureState random_state(const RegisterLayout& layout, RandomSource& rng) {
    std::vector<Complex> amps(layout.dimension());
    double norm2 = 0.0;
    for (Complex& a : amps) {
        const double u = 1.0 - rng.uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u));
        const double angle = rng.uniform_angle();
        a = std::polar(radius, angle);
        norm2 += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (Complex& a : amps) a *= scale;
    return PureState(layout, std::move(amps));
}

Complex inner_product(const PureState& a, const PureState& b) {
    Complex acc{0.0, 0.0};
    for (std::uint64_t i = 0; i < a.dimension(); ++i)
        acc += std::conj(a.amplitude_at(i)) * b.amplitude_at(i);
    return acc;
}

double max_amp_diff(const PureState& a, const PureState& b) {
    double worst = 0.0;
    for (std::uint64_t i = 0; i < a.dimension(); ++i)
        worst = std::max(worst, std::abs(a.amplitude_at(i) - b.amplitude_at(i)));
    return worst;
}

PureState sparse_state(const RegisterLayout& layout, const std::vector<std::pair<std::uint64_t, Complex>>& entries) {
    std::vector<Complex> amps(layout.dimension(), Complex{0.0, 0.0});
    for (const auto& [g, a] : entries) amps[g] = a;
    return PureState(layout, std::move(amps));
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

struct Failure {
    std::string detail;
};

void expect(bool condition, const std::string& detail) {
    if (!condition) throw Failure{detail};
}

// ---- statecore ------------------------------------------------------------

std::string check_statecore_type_invariants() {
    RandomSource rng(mix_seed(kVerifySeed, 1));
    RegisterLayout layout({{"X", 2}, {"F", 2}});
    for (int i = 0; i < 50; ++i) {
        PureState s = random_state(layout, rng);
        expect(std::abs(s.norm() - 1.0) <= kInvariantTol, "random state norm drifted");
        s = hadamard(s, "X");
        expect(std::abs(s.norm() - 1.0) <= kInvariantTol, "norm drifted after hadamard");
    }
    std::vector<PureState> states;
    std::vector<double> weights;
    for (int i = 0; i < 8; ++i) {
        states.push_back(random_state(layout, rng));
        weights.push_back(0.125);
    }
    DensityMatrix dm = mix_to_density(states, weights); // ctor enforces Hermitian + trace
    for (double ev : dm.eigenvalues())
        expect(ev >= -kInvariantTol, "mixture eigenvalue below -1e-9: " + fmt(ev));
    DensityMatrix reduced = partial_trace(dm, std::vector<std::string>{"X"});
    double trace = 0.0;
    for (std::uint64_t i = 0; i < reduced.dim(); ++i) trace += reduced.at(i, i).real();
    expect(std::abs(trace - 1.0) <= kInvariantTol, "partial trace lost trace mass");
    return "norms, mixtures, and reduced matrices within 1e-9";
}

std::string check_statecore_index_bijection() {
    RegisterLayout layout({{"X", 2}, {"F", 2}});
    for (std::uint64_t x = 0; x < 4; ++x)
        for (std::uint64_t f = 0; f < 4; ++f) {
            const PureState s = prepare(layout, {{"X", x}, {"F", f}});
            for (std::uint64_t x2 = 0; x2 < 4; ++x2)
                for (std::uint64_t f2 = 0; f2 < 4; ++f2) {
                    const Complex a = amplitude(s, {{"X", x2}, {"F", f2}});
                    const double want = (x == x2 && f == f2) ? 1.0 : 0.0;
                    expect(std::abs(a - Complex{want, 0.0}) == 0.0, "prepare/amplitude mismatch");
                }
        }
    expect(global_index(layout, {{"X", 3}, {"F", 1}}) == 13, "index convention drifted");
    bool threw = false;
    try {
        prepare(layout, {{"X", 4}, {"F", 0}});
    } catch (const InvalidAssignment&) {
        threw = true;
    }
    expect(threw, "out-of-range assignment accepted");
    return "16x16 round-trip exact, {X:3,F:1} -> 13";
}

std::string check_statecore_partial_trace_purity() {
    RandomSource rng(mix_seed(kVerifySeed, 2));
    RegisterLayout a_layout({{"A", 2}});
    RegisterLayout b_layout({{"B", 2}});
    RegisterLayout joint({{"A", 2}, {"B", 2}});
    for (int i = 0; i < 20; ++i) {
        const PureState pa = random_state(a_layout, rng);
        const PureState pb = random_state(b_layout, rng);
        std::vector<Complex> amps(joint.dimension());
        for (std::uint64_t ia = 0; ia < 4; ++ia)
            for (std::uint64_t ib = 0; ib < 4; ++ib)
                amps[(ia << 2) | ib] = pa.amplitude_at(ia) * pb.amplitude_at(ib);
        const PureState product(joint, std::move(amps));
        DensityMatrix dm = mix_to_density(std::vector<PureState>{product}, std::vector<double>{1.0});
        for (const char* keep : {"A", "B"}) {
            DensityMatrix red = partial_trace(dm, std::vector<std::string>{keep});
            const auto evs = red.eigenvalues();
            expect(std::abs(evs.back() - 1.0) <= kInvariantTol,
                   "product-state marginal impure (largest eigenvalue " + fmt(evs.back()) + ")");
        }
    }
    return "20 random product states give pure marginals";
}

std::string check_statecore_fidelity_symmetry() {
    RandomSource rng(mix_seed(kVerifySeed, 3));
    RegisterLayout layout({{"X", 3}});
    for (int i = 0; i < 50; ++i) {
        const PureState a = random_state(layout, rng);
        const PureState b = random_state(layout, rng);
        expect(std::abs(fidelity_up_to_phase(a, b) - fidelity_up_to_phase(b, a)) <= kAnalyticTol,
               "fidelity is not symmetric");
        const Complex phase = std::polar(1.0, rng.uniform_angle());
        std::vector<Complex> rotated(b.amplitudes().begin(), b.amplitudes().end());
        for (Complex& x : rotated) x *= phase;
        const PureState b_rot(layout, std::move(rotated));
        expect(std::abs(fidelity_up_to_phase(a, b) - fidelity_up_to_phase(a, b_rot)) <= kAnalyticTol,
               "fidelity changed under a global phase");
        expect(std::abs(fidelity_up_to_phase(a, a) - 1.0) <= kAnalyticTol, "self fidelity != 1");
    }
    return "symmetric and phase-invariant on 50 random pairs";
}

// ---- gates ----------------------------------------------------------------

std::string check_gates_norm_preservation() {
    RandomSource rng(mix_seed(kVerifySeed, 4));
    RegisterLayout layout({{"X", 2}, {"F", 2}});
    OracleFunction oracle = make_xor_periodic(2, 2, rng);
    std::vector<double> phases{0.0, 0.7, 1.9, 4.4};
    for (int i = 0; i < 50; ++i) {
        const PureState s = random_state(layout, rng);
        for (const PureState& t :
             {hadamard(s, "X"), dft(s, "X"), dft_inverse(s, "F"), phase_mask(s, "X", phases),
              oracle_apply(s, oracle, "X", "F")})
            expect(std::abs(t.norm() - 1.0) <= kAnalyticTol, "gate changed the norm");
    }
    return "H, DFT, phase masks, and oracles norm-safe on 50 states";
}

std::string check_gates_hadamard_involution() {
    RandomSource rng(mix_seed(kVerifySeed, 5));
    RegisterLayout layout({{"X", 3}, {"F", 1}});
    for (int i = 0; i < 50; ++i) {
        const PureState s = random_state(layout, rng);
        const PureState twice = hadamard(hadamard(s, "X"), "X");
        expect(max_amp_diff(s, twice) <= kAnalyticTol, "H twice is not the identity");
    }
    return "H twice = id within 1e-12 on 50 states";
}

std::string check_gates_disjoint_commutation() {
    RandomSource rng(mix_seed(kVerifySeed, 6));
    RegisterLayout layout({{"X", 2}, {"F", 2}, {"G", 1}});
    OracleFunction oracle = make_xor_periodic(2, 1, rng);
    for (int i = 0; i < 30; ++i) {
        const PureState s = random_state(layout, rng);
        const PureState ab = hadamard(oracle_apply(s, oracle, "X", "F"), "G");
        const PureState ba = oracle_apply(hadamard(s, "G"), oracle, "X", "F");
        expect(max_amp_diff(ab, ba) <= kAnalyticTol, "oracle and H on disjoint registers differ");
    }
    return "oracle(X->F) commutes with H(G) on 30 states";
}

std::string check_gates_dft_unitarity() {
    for (int n = 1; n <= 8; ++n) {
        RegisterLayout layout({{"X", n}});
        const std::uint64_t N = layout.dimension();
        std::vector<PureState> columns;
        columns.reserve(N);
        for (std::uint64_t x = 0; x < N; ++x)
            columns.push_back(dft(prepare(layout, {{"X", x}}), "X"));
        for (std::uint64_t i = 0; i < N; ++i)
            for (std::uint64_t j = i; j < N; ++j) {
                const Complex g = inner_product(columns[i], columns[j]);
                const Complex want = (i == j) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
                expect(std::abs(g - want) <= kAnalyticTol,
                       "DFT Gram entry off at n=" + std::to_string(n));
            }
    }
    return "columns orthonormal within 1e-12 for n = 1..8";
}

std::string check_gates_eq2_pipeline() {
    OracleFunction oracle = make_xor_periodic_sequential(2, 2);
    RegisterLayout layout({{"X", 2}, {"F", 2}});
    PureState state = prepare(layout, {{"X", 0}, {"F", 0}});
    state = oracle_apply(hadamard(state, "X"), oracle, "X", "F");
    const PureState expected = sparse_state(
        layout, {{0, {0.5, 0.0}}, {5, {0.5, 0.0}}, {8, {0.5, 0.0}}, {13, {0.5, 0.0}}});
    expect(fidelity_up_to_phase(state, expected) >= 1.0 - kAnalyticTol,
           "pipeline missed the target state");
    expect(std::abs(amplitude(state, {{"X", 1}, {"F", 1}}) - Complex{0.5, 0.0}) <= kAnalyticTol,
           "amplitude at |1,1> is not 1/2");
    return "1/2(|0,0>+|1,1>+|2,0>+|3,1>) reproduced exactly";
}

// ---- measure ----------------------------------------------------------------

std::string check_measure_born_normalization() {
    RandomSource rng(mix_seed(kVerifySeed, 7));
    RegisterLayout layout({{"X", 2}, {"F", 2}});
    for (int i = 0; i < 100; ++i) {
        const PureState s = random_state(layout, rng);
        for (const char* reg : {"X", "F"}) {
            double sum = 0.0;
            for (const auto& [outcome, p] : born_distribution(s, reg)) sum += p;
            expect(std::abs(sum - 1.0) <= kAnalyticTol, "Born weights do not sum to 1");
        }
    }
    return "100 states x 2 registers sum to 1 within 1e-12";
}

std::string check_measure_projective_equals_collapse() {
    RandomSource rng(mix_seed(kVerifySeed, 8));
    RegisterLayout layout({{"X", 2}, {"F", 2}});
    for (int i = 0; i < 1000; ++i) {
        const PureState s = random_state(layout, rng);
        const char* reg = (i % 2 == 0) ? "X" : "F";
        const MeasurementRecord record = measure_collapse(s, reg, rng);
        const PureState solved = projective_solve(s, reg, record.outcome);
        expect(fidelity_up_to_phase(record.post_state, solved) >= 1.0 - kAnalyticTol,
               "procedural and algebraic post-states differ");
        const OutcomeDistribution dist = born_distribution(s, reg);
        expect(std::abs(record.probability - dist.at(record.outcome)) <= kAnalyticTol,
               "recorded probability is not the Born weight");
        const PureState reprojected = projective_solve(record.post_state, reg, record.outcome);
        expect(fidelity_up_to_phase(record.post_state, reprojected) >= 1.0 - kAnalyticTol,
               "post-state escapes the outcome eigenspace");
        // Eq.-(7) maximality: any other eigenspace unit vector overlaps less.
        const PureState probe = projective_solve(random_state(layout, rng), reg, record.outcome);
        expect(std::abs(inner_product(probe, s)) <= std::abs(inner_product(solved, s)) + kAnalyticTol,
               "projection does not maximize the overlap");
    }
    return "1000 random states: fidelity >= 1-1e-12, probabilities exact";
}

std::string check_measure_deferred_equivalence() {
    RandomSource rng(mix_seed(kVerifySeed, 9));
    double worst = 0.0;
    for (int n = 2; n <= 6; ++n) {
        for (int i = 0; i < 20; ++i) {
            const std::uint64_t r = 1 + rng.uniform_below((std::uint64_t{1} << n) - 1);
            OracleFunction oracle = make_xor_periodic(n, r, rng);
            const double tv = tv_distance(simon_final_distribution(oracle, true),
                                          simon_final_distribution(oracle, false));
            worst = std::max(worst, tv);
        }
    }
    expect(worst < kAnalyticTol, "deferred-measurement TV distance " + fmt(worst));
    return "100 oracles (n = 2..6), max TV " + fmt(worst);
}

std::string check_measure_frequency_convergence() {
    RandomSource state_rng(mix_seed(kVerifySeed, 10));
    RegisterLayout layout({{"X", 2}, {"F", 1}});
    const PureState s = random_state(layout, state_rng);
    const OutcomeDistribution dist = born_distribution(s, "X");

    RandomSource rng(mix_seed(kVerifySeed, 11));
    const int draws = 10000;
    std::map<std::uint64_t, int> counts;
    for (int i = 0; i < draws; ++i) ++counts[measure_collapse(s, "X", rng).outcome];
    for (const auto& [outcome, p] : dist) {
        const double freq = static_cast<double>(counts[outcome]) / draws;
        const double bound = 5.0 * std::sqrt(p * (1.0 - p) / draws);
        expect(std::abs(freq - p) <= bound,
               "outcome " + std::to_string(outcome) + " deviates " + fmt(std::abs(freq - p)) +
                   " > " + fmt(bound));
    }
    return "10^4 draws within 5-sigma of the Born weights";
}

std::string check_measure_premeasure_unitarity() {
    RandomSource rng(mix_seed(kVerifySeed, 12));
    RegisterLayout layout({{"X", 2}, {"F", 2}});
    for (int i = 0; i < 50; ++i) {
        const PureState a = random_state(layout, rng);
        const PureState b = random_state(layout, rng);
        const PureState ea = premeasure_von_neumann(a, "F");
        const PureState eb = premeasure_von_neumann(b, "F");
        expect(std::abs(inner_product(ea, eb) - inner_product(a, b)) <= kAnalyticTol,
               "pointer coupling changed an inner product");
        expect(tv_distance(born_distribution(ea, "P"), born_distribution(a, "F")) <= kAnalyticTol,
               "pointer marginal != register marginal");
    }
    // Eq. (5) on the Table-I t2 instance.
    OracleFunction oracle = make_xor_periodic_sequential(2, 2);
    PureState t2 = oracle_apply(hadamard(prepare(layout, {{"X", 0}, {"F", 0}}), "X"), oracle, "X", "F");
    const PureState pointered = premeasure_von_neumann(t2, "F");
    RegisterLayout extended({{"X", 2}, {"F", 2}, {"P", 2}});
    const PureState expected = sparse_state(
        extended, {{0, {0.5, 0.0}}, {21, {0.5, 0.0}}, {32, {0.5, 0.0}}, {53, {0.5, 0.0}}});
    expect(fidelity_up_to_phase(pointered, expected) >= 1.0 - kAnalyticTol,
           "Eq.-(5) pointer state mismatch");
    bool threw = false;
    try {
        premeasure_von_neumann(pointered, "F");
    } catch (const LayoutCollision&) {
        threw = true;
    }
    expect(threw, "second pointer register accepted");
    return "inner products preserved; pointer marginal matches; Eq. (5) exact";
}

// ---- oracles ----------------------------------------------------------------

std::string check_oracles_family_invariants() {
    RandomSource rng(mix_seed(kVerifySeed, 13));
    for (int n = 2; n <= 8; ++n)
        for (int i = 0; i < 5; ++i) {
            const std::uint64_t r = 1 + rng.uniform_below((std::uint64_t{1} << n) - 1);
            validate_family(make_xor_periodic(n, r, rng));
        }
    const OracleFunction canonical = make_xor_periodic_sequential(2, 2);
    validate_family(canonical);
    expect(canonical.table == std::vector<std::uint64_t>({0, 1, 0, 1}),
           "canonical n=2, r=2 table is not [0,1,0,1]");
    for (std::uint64_t a : {2ULL, 4ULL, 7ULL, 8ULL, 11ULL, 13ULL})
        validate_family(make_modexp(a, 15, 4));
    const OracleFunction modexp2 = make_modexp(2, 15, 4);
    expect(std::vector<std::uint64_t>(modexp2.table.begin(), modexp2.table.begin() + 8) ==
               std::vector<std::uint64_t>({1, 2, 4, 8, 1, 2, 4, 8}),
           "2^x mod 15 table wrong");
    for (int k = 0; k < 4; ++k) validate_family(deutsch_oracle(k));
    expect(deutsch_oracle(2).table == std::vector<std::uint64_t>({1, 0}), "f_10 table wrong");
    for (std::uint64_t k = 0; k < 4; ++k) validate_family(grover_oracle(k, 2));
    expect(grover_oracle(2, 2).table == std::vector<std::uint64_t>({0, 0, 1, 0}),
           "grover k=2 table wrong");
    const OracleFunction dx = make_deutsch_extended();
    validate_family(dx);
    expect(dx.table == std::vector<std::uint64_t>({0, 0, 0, 1, 1, 0, 1, 1}),
           "extended deutsch table wrong");
    validate_family(make_grover_extended(2));
    bool threw = false;
    try {
        make_modexp(3, 15, 4);
    } catch (const NotCoprime&) {
        threw = true;
    }
    expect(threw, "gcd(3,15) != 1 accepted");
    return "all six families pass exhaustive validation";
}

std::string check_oracles_collision_pair() {
    RandomSource rng(mix_seed(kVerifySeed, 14));
    OracleFunction canonical = make_xor_periodic_sequential(2, 2);
    const CollisionResult c = classical_collision_search(canonical);
    expect(c.x1 == 0 && c.x2 == 2 && c.queries == 3, "Table-I scan should find (0,2) in 3 queries");
    for (int n = 2; n <= 7; ++n)
        for (int i = 0; i < 10; ++i) {
            const std::uint64_t r = 1 + rng.uniform_below((std::uint64_t{1} << n) - 1);
            OracleFunction oracle = make_xor_periodic(n, r, rng);
            const CollisionResult got = classical_collision_search(oracle);
            expect(got.x1 != got.x2, "collision pair not distinct");
            expect(oracle.table[got.x1] == oracle.table[got.x2], "collision pair disagrees");
            expect((got.x1 ^ got.x2) == r, "collision pair does not recover r");
        }
    OracleFunction r1 = make_xor_periodic(2, 1, rng);
    const CollisionResult c1 = classical_collision_search(r1);
    expect(c1.x1 == 0 && c1.x2 == 1 && c1.queries == 2, "r=1 scan should stop after 2 queries");
    return "pairs satisfy f(x1)=f(x2), x1 xor x2 = r on 60 oracles";
}

std::string check_oracles_query_counters() {
    RandomSource rng(mix_seed(kVerifySeed, 15));
    OracleFunction oracle = make_xor_periodic(2, 2, rng);
    expect(oracle.classical_queries == 0 && oracle.quantum_invocations == 0,
           "fresh oracle has dirty counters");
    RegisterLayout layout({{"X", 2}, {"F", 2}});
    const PureState s = prepare(layout, {{"X", 0}, {"F", 0}});
    oracle_apply(s, oracle, "X", "F");
    expect(oracle.quantum_invocations == 1, "one gate application != one invocation");
    oracle.query(0);
    oracle.query(1);
    expect(oracle.classical_queries == 2, "table lookups miscounted");
    const std::uint64_t before = oracle.classical_queries;
    const CollisionResult c = classical_collision_search(oracle);
    expect(oracle.classical_queries - before == c.queries,
           "scan count disagrees with the counter delta");
    return "counters move by exactly 1 per lookup / gate";
}

std::string check_oracles_determinism() {
    for (int n : {3, 5}) {
        RandomSource rng_a(mix_seed(kVerifySeed, 16));
        RandomSource rng_b(mix_seed(kVerifySeed, 16));
        const OracleFunction a = make_xor_periodic(n, 5 % (1 << n), rng_a);
        const OracleFunction b = make_xor_periodic(n, 5 % (1 << n), rng_b);
        expect(a.table == b.table, "same seed produced different tables");
    }
    RandomSource rng(mix_seed(kVerifySeed, 17));
    const OracleFunction original = make_xor_periodic(4, 9, rng);
    const OracleFunction reparsed = oracle_from_json(oracle_to_json(original));
    expect(reparsed.family == original.family && reparsed.table == original.table &&
               reparsed.params == original.params && reparsed.in_bits == original.in_bits &&
               reparsed.out_bits == original.out_bits,
           "JSON round-trip altered the oracle");
    return "tables reproducible from seeds; JSON round-trip exact";
}

// ---- algorithms --------------------------------------------------------------

std::string check_algorithms_simon_constraint() {
    RandomSource rng(mix_seed(kVerifySeed, 18));
    int runs = 0;
    for (int n = 2; n <= 8; ++n)
        for (int i = 0; i < 50; ++i) {
            const std::uint64_t r = 1 + rng.uniform_below((std::uint64_t{1} << n) - 1);
            OracleFunction oracle = make_xor_periodic(n, r, rng);
            const RunTrace trace = simon_run(oracle, (i % 2) == 0, rng.raw());
            const MeasurementRecord& z_record = trace.measurements.back();
            expect(z_record.reg == "X", "final measurement is not on X");
            expect(and_parity(r, z_record.outcome) == 0, "r.z parity is odd");
            expect(trace.oracle_invocations == 1, "simon run used != 1 invocation");
            const auto dist = born_distribution(trace.states[4].state, "X");
            expect(dist.count(0) == 1 && dist.at(0) > 0.0, "z = 0 lost its support");
            ++runs;
        }
    return std::to_string(runs) + " runs, zero constraint violations";
}

std::string check_algorithms_simon_sampler_consistency() {
    RandomSource rng(mix_seed(kVerifySeed, 19));
    int agreements = 0;
    for (int n = 2; n <= 5; ++n)
        for (int i = 0; i < 50; ++i) {
            const std::uint64_t r = 1 + rng.uniform_below((std::uint64_t{1} << n) - 1);
            OracleFunction oracle = make_xor_periodic(n, r, rng);
            const std::uint64_t seed = rng.raw();
            const RunTrace trace = simon_run(oracle, true, seed);
            RandomSource replay(seed);
            const SimonSample sample = simon_sample_z(oracle, replay);
            expect(trace.measurements[0].outcome == sample.f_bar,
                   "reduced sampler drew a different f");
            expect(trace.measurements[1].outcome == sample.z_bar,
                   "reduced sampler drew a different z");
            ++agreements;
        }
    return std::to_string(agreements) + " paired runs drew identical (f, z)";
}

std::string check_algorithms_simon_solver() {
    RandomSource rng(mix_seed(kVerifySeed, 20));
    for (int n = 2; n <= 6; ++n) {
        std::uint64_t total_runs = 0;
        const int trials = 50;
        for (int i = 0; i < trials; ++i) {
            const std::uint64_t r = 1 + rng.uniform_below((std::uint64_t{1} << n) - 1);
            OracleFunction oracle = make_xor_periodic(n, r, rng);
            QueryLedger ledger;
            const SimonSolveResult got =
                simon_solve_r(oracle, rng.raw(), 16ULL * static_cast<std::uint64_t>(n), &ledger);
            expect(got.r == r, "recovered the wrong r");
            expect(ledger.quantum_runs == got.runs_used, "ledger run count mismatch");
            expect(ledger.quantum_invocations == got.runs_used, "ledger invocation mismatch");
            expect(ledger.measurement_cost_units == got.runs_used * 2 * static_cast<std::uint64_t>(n),
                   "ledger measurement units mismatch");
            total_runs += got.runs_used;
        }
        const double avg = static_cast<double>(total_runs) / trials;
        expect(avg <= 4.0 * n, "average runs " + fmt(avg) + " above 4n at n=" + std::to_string(n));
    }
    OracleFunction canonical = make_xor_periodic_sequential(2, 2);
    bool threw = false;
    try {
        simon_solve_r(canonical, 1, 0, nullptr);
    } catch (const InsufficientConstraints&) {
        threw = true;
    }
    expect(threw, "max_runs = 0 did not fail");
    return "r recovered on 250 instances within the 4n budget";
}

std::string check_algorithms_backdating() {
    RandomSource rng(mix_seed(kVerifySeed, 21));
    RegisterLayout layout({{"X", 2}, {"F", 2}});
    OracleFunction canonical = make_xor_periodic_sequential(2, 2);
    PureState t2 =
        oracle_apply(hadamard(prepare(layout, {{"X", 0}, {"F", 0}}), "X"), canonical, "X", "F");
    PureState t4 = hadamard(t2, "X");
    std::vector<GateOp> suffix{GateOp::make_hadamard("X")};
    for (const auto& [f_bar, p] : born_distribution(t2, "F")) {
        const double fid = backdate_check(t4, suffix, "F", f_bar);
        expect(fid >= 1.0 - kAnalyticTol, "Eq.-(8)/(9) backdating fidelity " + fmt(fid));
    }
    for (int i = 0; i < 100; ++i) {
        const int n = 2 + static_cast<int>(rng.uniform_below(4));
        const std::uint64_t r = 1 + rng.uniform_below((std::uint64_t{1} << n) - 1);
        OracleFunction oracle = make_xor_periodic(n, r, rng);
        RegisterLayout lo({{"X", n}, {"F", n}});
        PureState mid = oracle_apply(hadamard(prepare(lo, {{"X", 0}, {"F", 0}}), "X"), oracle, "X", "F");
        std::vector<GateOp> ops;
        ops.push_back(GateOp::make_hadamard("X"));
        if (i % 3 == 0) {
            std::vector<double> phases(std::size_t{1} << n);
            for (double& ph : phases) ph = rng.uniform_angle();
            ops.push_back(GateOp::make_phase_mask("X", std::move(phases)));
        }
        if (i % 3 == 1) ops.push_back(GateOp::make_dft("X"));
        PureState final_state = mid;
        for (const GateOp& op : ops) final_state = apply(final_state, op);
        const auto f_dist = born_distribution(mid, "F");
        auto it = f_dist.begin();
        std::advance(it, rng.uniform_below(f_dist.size()));
        const double fid = backdate_check(final_state, ops, "F", it->first);
        expect(fid >= 1.0 - kAnalyticTol, "random-instance backdating fidelity " + fmt(fid));
    }
    return "Eq. (8)/(9) plus 100 random suffixes all at fidelity 1";
}

std::string check_algorithms_deutsch_states() {
    const double s = 1.0 / std::numbers::sqrt2;
    RegisterLayout layout({{"X", 1}, {"F", 1}});
    const std::array<PureState, 4> expected{
        sparse_state(layout, {{0, {s, 0.0}}, {1, {-s, 0.0}}}),
        sparse_state(layout, {{2, {s, 0.0}}, {3, {-s, 0.0}}}),
        sparse_state(layout, {{2, {-s, 0.0}}, {3, {s, 0.0}}}),
        sparse_state(layout, {{0, {-s, 0.0}}, {1, {s, 0.0}}}),
    };
    for (int k = 0; k < 4; ++k) {
        const RunTrace trace = deutsch_standard_run(k, 11 + k);
        const PureState& t4 = trace.states[4].state;
        expect(fidelity_up_to_phase(t4, expected[k]) >= 1.0 - kAnalyticTol,
               "t3-list state mismatch at k=" + std::to_string(k));
        expect(max_amp_diff(t4, expected[k]) <= kAnalyticTol,
               "raw amplitudes (global phase) mismatch at k=" + std::to_string(k));
        const MeasurementRecord& record = trace.measurements.back();
        expect(record.outcome == (deutsch_balanced(k) ? 1u : 0u), "balanced indicator wrong");
        expect(std::abs(record.probability - 1.0) <= kAnalyticTol, "outcome not deterministic");
        expect(trace.oracle_invocations == 1, "deutsch run used != 1 invocation");
    }
    const RunTrace zero_phase = deutsch_extended_run(99, std::array<double, 3>{0.0, 0.0, 0.0});
    const double c = 1.0 / (2.0 * std::numbers::sqrt2);
    RegisterLayout ext({{"K", 2}, {"X", 1}, {"F", 1}});
    const PureState eq11 = sparse_state(ext, {{0, {c, 0.0}},
                                              {1, {-c, 0.0}},
                                              {6, {c, 0.0}},
                                              {7, {-c, 0.0}},
                                              {10, {-c, 0.0}},
                                              {11, {c, 0.0}},
                                              {12, {-c, 0.0}},
                                              {13, {c, 0.0}}});
    expect(max_amp_diff(zero_phase.states[4].state, eq11) <= kAnalyticTol,
           "Eq. (11) state mismatch at zero phases");
    return "four t3 states exact including the k=10,11 global sign; Eq. (11) exact";
}

std::string check_algorithms_extended_correlations() {
    RandomSource rng(mix_seed(kVerifySeed, 22));
    for (int i = 0; i < 300; ++i) {
        const RunTrace trace = deutsch_extended_run(rng.raw());
        const std::uint64_t k_bar = trace.measurements[0].outcome;
        const std::uint64_t x_bar = trace.measurements[1].outcome;
        expect(x_bar == (deutsch_balanced(static_cast<int>(k_bar)) ? 1u : 0u),
               "extended Deutsch correlation broken");
        expect(trace.oracle_invocations == 1, "extended Deutsch used != 1 invocation");
    }
    for (int i = 0; i < 300; ++i) {
        const RunTrace trace = grover_run(0, true, rng.raw());
        expect(trace.measurements[0].outcome == trace.measurements[1].outcome,
               "extended Grover k != x");
        expect(trace.oracle_invocations == 1, "extended Grover used != 1 invocation");
    }
    for (std::uint64_t k = 0; k < 4; ++k)
        for (int i = 0; i < 25; ++i) {
            const RunTrace trace = grover_run(k, false, rng.raw());
            expect(trace.measurements.back().outcome == k, "standard Grover missed its target");
            expect(std::abs(trace.measurements.back().probability - 1.0) <= kAnalyticTol,
                   "standard Grover is not deterministic");
        }
    return "600 extended runs perfectly correlated; Grover hits k with probability 1";
}

std::string check_algorithms_oracle_budget() {
    for (int k = 0; k < 4; ++k) {
        const RunTrace trace = deutsch_standard_run(k, 5);
        expect(trace.oracle_invocations == 1, "quantum Deutsch budget violated");
        OracleFunction classical = deutsch_oracle(k);
        const bool balanced = classical_deutsch_distinguish(classical);
        expect(balanced == deutsch_balanced(k), "classical baseline got the wrong answer");
        expect(classical.classical_queries == 2, "classical baseline should use 2 queries");
    }
    const RunTrace grover_trace = grover_run(1, false, 5);
    expect(grover_trace.oracle_invocations == 1, "quantum Grover budget violated");
    return "1 quantum invocation vs 2 classical queries, all four modes";
}

std::string check_algorithms_shor_comb() {
    RandomSource rng(mix_seed(kVerifySeed, 23));
    const int n = 4;
    const std::uint64_t N = 16;
    for (std::uint64_t a : {2ULL, 4ULL, 7ULL, 8ULL, 11ULL, 13ULL}) {
        const std::uint64_t r = multiplicative_order(a, 15);
        expect(N % r == 0, "period does not divide N");
        const RunTrace trace = shor_period_run(a, 15, n, rng.raw());
        // t3 is the Eq.-(10) comb: r-spaced support, N/r terms of weight r/N.
        const auto comb = born_distribution(trace.states[3].state, "X");
        expect(comb.size() == N / r, "comb term count wrong for a=" + std::to_string(a));
        std::uint64_t previous = 0;
        bool first = true;
        for (const auto& [x, p] : comb) {
            expect(std::abs(p - static_cast<double>(r) / N) <= kAnalyticTol, "comb weight not r/N");
            if (!first) expect(x - previous == r, "comb spacing is not r");
            first = false;
            previous = x;
        }
        const auto peaks = born_distribution(trace.states[4].state, "X");
        expect(peaks.size() == r, "peak count != r for a=" + std::to_string(a));
        for (const auto& [z, p] : peaks) {
            expect(z % (N / r) == 0, "peak not a multiple of N/r");
            expect(std::abs(p - 1.0 / static_cast<double>(r)) <= kAnalyticTol,
                   "peak probability deviates from 1/r");
        }
        expect(trace.measurements[1].outcome % (N / r) == 0, "measured z off the comb");
    }
    const std::vector<std::uint64_t> pair{4, 12};
    expect(shor_extract_period(pair, 16) == 4, "gcd extraction failed on {4,12}");
    const std::vector<std::uint64_t> single{8};
    expect(shor_extract_period(single, 16) == 2, "gcd extraction failed on {8}");
    bool threw = false;
    try {
        const std::vector<std::uint64_t> zeros{0, 0};
        shor_extract_period(zeros, 16);
    } catch (const Inconclusive&) {
        threw = true;
    }
    expect(threw, "all-zero samples should be inconclusive");
    return "six (a, 15) instances: exact combs, exact 1/r peaks";
}

std::string check_algorithms_random_phase_mixture() {
    RandomSource rng(mix_seed(kVerifySeed, 24));
    const int samples = 1000;
    std::vector<PureState> t0_states;
    t0_states.reserve(samples);
    for (int i = 0; i < samples; ++i)
        t0_states.push_back(deutsch_extended_run(rng.raw()).states[0].state);
    const std::vector<double> weights(samples, 1.0 / samples);
    const DensityMatrix averaged =
        partial_trace(mix_to_density(t0_states, weights), std::vector<std::string>{"K"});
    for (std::uint64_t i = 0; i < 4; ++i) {
        expect(std::abs(averaged.at(i, i).real() - 0.25) <= 1e-9, "mixture diagonal is not 1/4");
        for (std::uint64_t j = 0; j < 4; ++j)
            if (i != j)
                expect(std::abs(averaged.at(i, j)) <= 0.05,
                       "off-diagonal " + fmt(std::abs(averaged.at(i, j))) + " survives averaging");
    }
    return "phase-averaged K matrix within 0.05 of diag(1/4) on 10^3 seeds";
}

std::string check_algorithms_trace_labels() {
    RandomSource rng(mix_seed(kVerifySeed, 25));
    OracleFunction oracle = make_xor_periodic(3, 3, rng);
    const std::vector<RunTrace> traces{
        simon_run(oracle, true, 7),       simon_run(oracle, false, 7),
        shor_period_run(7, 15, 4, 7),     deutsch_standard_run(1, 7),
        deutsch_extended_run(7),          grover_run(2, false, 7),
        grover_run(2, true, 7),
    };
    const std::vector<std::string> want{"t0", "t1", "t2", "t3", "t4"};
    for (const RunTrace& trace : traces) {
        expect(trace.states.size() == want.size(), "trace does not carry five states");
        for (std::size_t i = 0; i < want.size(); ++i)
            expect(trace.states[i].label == want[i], "label order broken");
        expect(!trace.measurements.empty(), "trace lost its measurement records");
        expect(trace.seed == 7, "trace seed not echoed");
    }
    return "all seven run shapes carry t0..t4 in order";
}

// ---- cli ----------------------------------------------------------------------

std::string check_cli_byte_reproducibility() {
    for (int round = 0; round < 2; ++round) {
        OracleFunction a = make_xor_periodic_sequential(3, 5);
        OracleFunction b = make_xor_periodic_sequential(3, 5);
        expect(trace_to_json(simon_run(a, true, 42)) == trace_to_json(simon_run(b, true, 42)),
               "simon traces differ between invocations");
    }
    expect(trace_to_json(shor_period_run(7, 15, 4, 9)) == trace_to_json(shor_period_run(7, 15, 4, 9)),
           "shor traces differ between invocations");
    expect(trace_to_json(deutsch_extended_run(3)) == trace_to_json(deutsch_extended_run(3)),
           "deutsch traces differ between invocations");
    expect(trace_to_json(grover_run(2, true, 3)) == trace_to_json(grover_run(2, true, 3)),
           "grover traces differ between invocations");
    std::string first, second;
    for (const ReportRow& row : speedup_report(2, 3, 5)) first += report_row_to_json(row);
    for (const ReportRow& row : speedup_report(2, 3, 5)) second += report_row_to_json(row);
    expect(first == second, "report rows differ between invocations");
    return "identical seeds serialize byte-identically";
}

using CheckFn = std::function<std::string()>;

CheckResult run_check(const std::string& name, const CheckFn& fn) {
    try {
        return CheckResult{name, true, fn()};
    } catch (const Failure& f) {
        return CheckResult{name, false, f.detail};
    } catch (const std::exception& e) {
        return CheckResult{name, false, std::string("exception: ") + e.what()};
    }
}

} // namespace

std::vector<CheckResult> run_all_checks() {
    const std::vector<std::pair<std::string, CheckFn>> checks{
        {"statecore-type-invariants", check_statecore_type_invariants},
        {"statecore-index-bijection", check_statecore_index_bijection},
        {"statecore-partial-trace-purity", check_statecore_partial_trace_purity},
        {"statecore-fidelity-symmetry", check_statecore_fidelity_symmetry},
        {"gates-norm-preservation", check_gates_norm_preservation},
        {"gates-hadamard-involution", check_gates_hadamard_involution},
        {"gates-disjoint-commutation", check_gates_disjoint_commutation},
        {"gates-dft-unitarity", check_gates_dft_unitarity},
        {"gates-eq2-pipeline", check_gates_eq2_pipeline},
        {"measure-born-normalization", check_measure_born_normalization},
        {"measure-projective-equals-collapse", check_measure_projective_equals_collapse},
        {"measure-deferred-equivalence", check_measure_deferred_equivalence},
        {"measure-frequency-convergence", check_measure_frequency_convergence},
        {"measure-premeasure-unitarity", check_measure_premeasure_unitarity},
        {"oracles-family-invariants", check_oracles_family_invariants},
        {"oracles-collision-pair", check_oracles_collision_pair},
        {"oracles-query-counters", check_oracles_query_counters},
        {"oracles-determinism", check_oracles_determinism},
        {"algorithms-simon-constraint", check_algorithms_simon_constraint},
        {"algorithms-simon-sampler-consistency", check_algorithms_simon_sampler_consistency},
        {"algorithms-simon-solver", check_algorithms_simon_solver},
        {"algorithms-backdating", check_algorithms_backdating},
        {"algorithms-deutsch-states", check_algorithms_deutsch_states},
        {"algorithms-extended-correlations", check_algorithms_extended_correlations},
        {"algorithms-oracle-budget", check_algorithms_oracle_budget},
        {"algorithms-shor-comb", check_algorithms_shor_comb},
        {"algorithms-random-phase-mixture", check_algorithms_random_phase_mixture},
        {"algorithms-trace-labels", check_algorithms_trace_labels},
        {"cli-byte-reproducibility", check_cli_byte_reproducibility},
    };
    std::vector<CheckResult> results;
    results.reserve(checks.size());
    for (const auto& [name, fn] : checks) results.push_back(run_check(name, fn));
    return results;
}

} // namespace vnmlab
