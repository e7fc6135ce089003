#include "vnmlab/gates.hpp"

#include <cmath>
#include <numbers>

namespace vnmlab {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Permutation core of the oracle gate, shared by the counted forward gate
// and the uncounted inverse (an XOR oracle is its own inverse).
PureState xor_oracle_permute(const PureState& state, const OracleFunction& oracle,
                             std::span<const std::string> inputs, std::string_view target) {
    const RegisterLayout& layout = state.layout();
    int input_width = 0;
    for (const std::string& name : inputs) input_width += layout.width_of(name);
    if (input_width != oracle.in_bits)
        throw WidthMismatch("oracle input width " + std::to_string(oracle.in_bits) +
                            " != combined register width " + std::to_string(input_width));
    if (layout.width_of(target) != oracle.out_bits)
        throw WidthMismatch("oracle output width " + std::to_string(oracle.out_bits) +
                            " != register '" + std::string(target) + "' width");

    std::vector<Complex> out(state.dimension(), Complex{0.0, 0.0});
    for (std::uint64_t g = 0; g < state.dimension(); ++g) {
        const Complex a = state.amplitude_at(g);
        if (a == Complex{0.0, 0.0}) continue;
        std::uint64_t x = 0;
        for (const std::string& name : inputs)
            x = (x << layout.width_of(name)) | layout.extract(g, name);
        const std::uint64_t y = layout.extract(g, target);
        out[layout.replace(g, target, y ^ oracle.table[x])] += a;
    }
    return PureState(layout, std::move(out));
}

PureState dft_kernel(const PureState& state, std::string_view reg, bool inverse) {
    const RegisterLayout& layout = state.layout();
    const int width = layout.width_of(reg);
    const int offset = layout.bit_offset(reg);
    const std::uint64_t n = std::uint64_t{1} << width;
    const std::uint64_t field_mask = (n - 1) << offset;

    // Explicit per-register kernel; registers are small at desk scale.
    const double sign = inverse ? -1.0 : 1.0;
    std::vector<Complex> roots(n);
    for (std::uint64_t j = 0; j < n; ++j)
        roots[j] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(j) /
                                       static_cast<double>(n));
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));

    std::vector<Complex> out(state.dimension());
    std::vector<Complex> block(n);
    for (std::uint64_t base = 0; base < state.dimension(); ++base) {
        if ((base & field_mask) != 0) continue;
        for (std::uint64_t x = 0; x < n; ++x) block[x] = state.amplitude_at(base | (x << offset));
        for (std::uint64_t z = 0; z < n; ++z) {
            Complex acc{0.0, 0.0};
            for (std::uint64_t x = 0; x < n; ++x) acc += roots[(x * z) % n] * block[x];
            out[base | (z << offset)] = acc * scale;
        }
    }
    return PureState(layout, std::move(out));
}

} // namespace

PureState hadamard(const PureState& state, std::string_view reg) {
    const RegisterLayout& layout = state.layout();
    const int width = layout.width_of(reg);
    const int offset = layout.bit_offset(reg);

    std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
    for (int qubit = 0; qubit < width; ++qubit) {
        const std::uint64_t mask = std::uint64_t{1} << (offset + qubit);
        for (std::uint64_t g = 0; g < amps.size(); ++g) {
            if (g & mask) continue;
            const Complex lo = amps[g];
            const Complex hi = amps[g | mask];
            amps[g] = (lo + hi) * kInvSqrt2;
            amps[g | mask] = (lo - hi) * kInvSqrt2;
        }
    }
    return PureState(layout, std::move(amps));
}

PureState oracle_apply(const PureState& state, OracleFunction& oracle, std::string_view input,
                       std::string_view target) {
    const std::vector<std::string> inputs{std::string(input)};
    return oracle_apply(state, oracle, inputs, target);
}

PureState oracle_apply(const PureState& state, OracleFunction& oracle,
                       std::span<const std::string> inputs, std::string_view target) {
    PureState out = xor_oracle_permute(state, oracle, inputs, target);
    oracle.quantum_invocations += 1; // one invocation per gate, not per basis term
    return out;
}

PureState dft(const PureState& state, std::string_view reg) { return dft_kernel(state, reg, false); }

PureState dft_inverse(const PureState& state, std::string_view reg) {
    return dft_kernel(state, reg, true);
}

PureState phase_mask(const PureState& state, std::string_view reg, std::span<const double> phases) {
    const RegisterLayout& layout = state.layout();
    const int width = layout.width_of(reg);
    if (phases.size() != (std::size_t{1} << width))
        throw WidthMismatch("need one phase per register value (2^width)");
    const int offset = layout.bit_offset(reg);
    const std::uint64_t mask = (std::uint64_t{1} << width) - 1;

    std::vector<Complex> factors(phases.size());
    for (std::size_t k = 0; k < phases.size(); ++k) factors[k] = std::polar(1.0, phases[k]);

    std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
    for (std::uint64_t g = 0; g < amps.size(); ++g) amps[g] *= factors[(g >> offset) & mask];
    return PureState(layout, std::move(amps));
}

GateOp GateOp::make_hadamard(std::string reg) {
    GateOp op;
    op.kind = Kind::hadamard;
    op.reg = std::move(reg);
    return op;
}

GateOp GateOp::make_dft(std::string reg) {
    GateOp op;
    op.kind = Kind::dft;
    op.reg = std::move(reg);
    return op;
}

GateOp GateOp::make_phase_mask(std::string reg, std::vector<double> phases) {
    GateOp op;
    op.kind = Kind::phase_mask;
    op.reg = std::move(reg);
    op.phases = std::move(phases);
    return op;
}

GateOp GateOp::make_oracle(OracleFunction& oracle, std::vector<std::string> inputs,
                           std::string target) {
    GateOp op;
    op.kind = Kind::oracle;
    op.oracle = &oracle;
    op.inputs = std::move(inputs);
    op.target = std::move(target);
    return op;
}

PureState apply(const PureState& state, const GateOp& op) {
    switch (op.kind) {
    case GateOp::Kind::hadamard: return hadamard(state, op.reg);
    case GateOp::Kind::dft: return dft(state, op.reg);
    case GateOp::Kind::dft_inverse: return dft_inverse(state, op.reg);
    case GateOp::Kind::phase_mask: return phase_mask(state, op.reg, op.phases);
    case GateOp::Kind::oracle: return oracle_apply(state, *op.oracle, op.inputs, op.target);
    }
    throw Error("unreachable gate kind");
}

PureState apply_inverse(const PureState& state, const GateOp& op) {
    switch (op.kind) {
    case GateOp::Kind::hadamard: return hadamard(state, op.reg);
    case GateOp::Kind::dft: return dft_kernel(state, op.reg, true);
    case GateOp::Kind::dft_inverse: return dft_kernel(state, op.reg, false);
    case GateOp::Kind::phase_mask: {
        std::vector<double> negated(op.phases.size());
        for (std::size_t i = 0; i < negated.size(); ++i) negated[i] = -op.phases[i];
        return phase_mask(state, op.reg, negated);
    }
    case GateOp::Kind::oracle: return xor_oracle_permute(state, *op.oracle, op.inputs, op.target);
    }
    throw Error("unreachable gate kind");
}

} // namespace vnmlab
