#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vnmlab/measure.hpp"
#include "vnmlab/oracles.hpp"
#include "vnmlab/statecore.hpp"

namespace vnmlab {

struct LabeledState {
    std::string label;
    PureState state;
};

/// Full record of one algorithm execution at the canonical time labels:
/// t0 preparation, t1 after the first Hadamard, t2 after function
/// evaluation, t3 after the intermediate measurement (identically t2 when
/// none is performed), t4 after the final transform.
struct RunTrace {
    std::string algorithm;
    std::uint64_t seed = 0;
    std::vector<LabeledState> states;
    std::vector<MeasurementRecord> measurements;
    std::uint64_t oracle_invocations = 0;
};

/// prepare |0,0> -> H(X) -> U_f -> [measure F] -> H(X) -> measure X.
/// The measured z̄ always satisfies r·z̄ ≡ 0 (mod 2). One oracle invocation.
RunTrace simon_run(OracleFunction& oracle, bool intermediate, std::uint64_t seed);

/// One Simon run reduced to its two draws (f̄, then z̄) without materializing
/// the joint state; consumes the rng exactly like simon_run with the
/// intermediate measurement and produces the same outcomes for the same
/// draws. Counts one quantum invocation on the oracle.
struct SimonSample {
    std::uint64_t f_bar = 0;
    std::uint64_t z_bar = 0;
};
SimonSample simon_sample_z(OracleFunction& oracle, RandomSource& rng);

/// Analytic final-X distribution of the Simon pipeline with or without the
/// intermediate F measurement (for the deferred-measurement equivalence).
OutcomeDistribution simon_final_distribution(OracleFunction& oracle, bool intermediate);

/// Repeats Simon runs, accumulating z̄ constraints over GF(2) until their
/// span has rank n-1, then returns the unique nonzero r in the orthogonal
/// complement. Throws InsufficientConstraints if max_runs is exhausted first.
struct SimonSolveResult {
    std::uint64_t r = 0;
    std::uint64_t runs_used = 0;
};
SimonSolveResult simon_solve_r(OracleFunction& oracle, std::uint64_t seed, std::uint64_t max_runs,
                               QueryLedger* ledger = nullptr);

/// Multiplicative order of a modulo L (requires gcd(a, L) = 1).
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t L);

/// prepare -> H(X) -> a^x mod L -> measure F (the r-comb) -> DFT(X) ->
/// measure X. Desk-scale restriction: the period r must divide N = 2^n,
/// so that every measured z̄ is a multiple of N/r with probability 1/r.
RunTrace shor_period_run(std::uint64_t a, std::uint64_t L, int n, std::uint64_t seed);

/// r = N / gcd(N, gcd of samples); exact-divisor case only. Throws
/// Inconclusive when every sample is zero.
std::uint64_t shor_extract_period(std::span<const std::uint64_t> samples, std::uint64_t N);

/// F in |−>, H(X) -> f_k -> H(X), measure X. Outcome = 1 iff f_k balanced,
/// deterministically, with one invocation. The trace's t4 carries the
/// pre-measurement state including its k-dependent global phase.
RunTrace deutsch_standard_run(int k, std::uint64_t seed);

/// Extended game: K holds all four f_k in superposition with independent
/// random phases (delta_1..3; delta_0 = 0), one two-input gate invocation,
/// then K and X are measured; x̄ = balanced(k̄) always. Fixed phases may be
/// supplied for the zero-phase check; otherwise they are drawn from rng.
RunTrace deutsch_extended_run(std::uint64_t seed,
                              std::optional<std::array<double, 3>> phases = std::nullopt);

/// n=2 Grover. Standard: one phase-kickback oracle call plus one
/// inversion-about-mean, X = k with probability 1. Extended: K carries all
/// four targets with random phases and the measured pair satisfies x̄ = k̄.
RunTrace grover_run(std::uint64_t k, bool extended, std::uint64_t seed, int n = 2);

/// Classical-vs-quantum accounting row for one register width.
struct ReportRow {
    int n = 0;
    std::uint64_t classical_worst = 0; // deterministic scan, adversarial r = 2^(n-1)
    double classical_avg = 0.0;        // scan count averaged over seeded random oracles
    double quantum_invocations = 0.0;  // avg invocations per solved instance
    double measurement_units = 0.0;    // avg abstract cost, width units per measured register
};

std::vector<ReportRow> speedup_report(int n_min, int n_max, int seeds);

} // namespace vnmlab
