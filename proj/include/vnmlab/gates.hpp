#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vnmlab/oracles.hpp"
#include "vnmlab/statecore.hpp"

namespace vnmlab {

/// Hadamard on every qubit of the register:
/// |x̄> -> (1/sqrt(N)) sum_x (-1)^{x̄·x} |x>, with x̄·x the AND-parity.
PureState hadamard(const PureState& state, std::string_view reg);

/// Reversible function evaluation |x>_in |y>_tgt -> |x>_in |y ^ f(x)>_tgt.
/// One call counts one quantum invocation on the oracle. Self-inverse.
PureState oracle_apply(const PureState& state, OracleFunction& oracle, std::string_view input,
                       std::string_view target);

/// Same gate with the input read from several registers, most significant
/// first (the extended two-input gates use inputs {mode, argument}).
PureState oracle_apply(const PureState& state, OracleFunction& oracle,
                       std::span<const std::string> inputs, std::string_view target);

/// |x> -> (1/sqrt(N)) sum_z exp(2*pi*i*x*z/N) |z> on one register.
PureState dft(const PureState& state, std::string_view reg);
PureState dft_inverse(const PureState& state, std::string_view reg);

/// Multiplies each basis term whose register value is k by exp(i*phases[k]).
PureState phase_mask(const PureState& state, std::string_view reg, std::span<const double> phases);

/// One gate application in a circuit suffix; lets measurement checks replay
/// or un-replay the tail of a pipeline.
struct GateOp {
    enum class Kind { hadamard, dft, dft_inverse, phase_mask, oracle };

    Kind kind{};
    std::string reg;                  // hadamard / dft / phase_mask target
    std::vector<double> phases;       // phase_mask only
    OracleFunction* oracle = nullptr; // oracle only; not owned
    std::vector<std::string> inputs;  // oracle only
    std::string target;               // oracle only

    static GateOp make_hadamard(std::string reg);
    static GateOp make_dft(std::string reg);
    static GateOp make_phase_mask(std::string reg, std::vector<double> phases);
    static GateOp make_oracle(OracleFunction& oracle, std::vector<std::string> inputs,
                              std::string target);
};

/// Forward application. Oracle ops count a quantum invocation.
PureState apply(const PureState& state, const GateOp& op);

/// Inverse application, for backdating analysis; oracle counters untouched.
PureState apply_inverse(const PureState& state, const GateOp& op);

} // namespace vnmlab
