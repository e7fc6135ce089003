#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "vnmlab/gates.hpp"
#include "vnmlab/rng.hpp"
#include "vnmlab/statecore.hpp"

namespace vnmlab {

/// One collapse event.
struct MeasurementRecord {
    std::string reg;
    std::uint64_t outcome = 0;  // the measured eigenvalue
    double probability = 0.0;   // Born weight of the outcome
    PureState post_state;       // normalized projection onto the eigenspace
    double rng_draw = 0.0;      // the uniform draw that selected the outcome
};

using OutcomeDistribution = std::map<std::uint64_t, double>;

/// Born weights per register value; entries below the zero-probability
/// threshold are omitted. Sums to 1 within 1e-12.
OutcomeDistribution born_distribution(const PureState& state, std::string_view reg);

/// Procedural collapse: samples an outcome by inverse CDF over outcomes in
/// ascending integer order using a single uniform draw, then projects and
/// renormalizes. Bit-reproducible from the rng seed.
MeasurementRecord measure_collapse(const PureState& state, std::string_view reg, RandomSource& rng);

/// First step of the two-step measurement model: unitary copy of the measured
/// register into a fresh equal-width pointer register P appended to the
/// layout, |.., f, ..>|0>_P -> |.., f, ..>|f>_P. The pointer is kept in the
/// output so the register-pointer correlation is itself checkable.
PureState premeasure_von_neumann(const PureState& state, std::string_view reg);

/// Algebraic formulation of collapse: the unique (up to phase) unit vector
/// fixed by the outcome projector with maximal overlap against the input,
/// i.e. the normalized projection. Agrees with measure_collapse post-states.
PureState projective_solve(const PureState& state, std::string_view reg, std::uint64_t outcome);

/// Collapse backdating: project the final state on the outcome, undo the
/// given circuit suffix, and compare (fidelity up to phase) against
/// projecting the suffix-undone state directly. 1 whenever the suffix
/// preserves the measured register's value.
double backdate_check(const PureState& final_state, std::span<const GateOp> post_unitaries,
                      std::string_view reg, std::uint64_t outcome);

/// Total variation distance between two outcome distributions.
double tv_distance(const OutcomeDistribution& a, const OutcomeDistribution& b);

} // namespace vnmlab
