#include "vnmlab/measure.hpp"

#include <cmath>

namespace vnmlab {

OutcomeDistribution born_distribution(const PureState& state, std::string_view reg) {
    const RegisterLayout& layout = state.layout();
    const int offset = layout.bit_offset(reg);
    const std::uint64_t mask = (std::uint64_t{1} << layout.width_of(reg)) - 1;

    std::vector<double> weights(mask + 1, 0.0);
    for (std::uint64_t g = 0; g < state.dimension(); ++g)
        weights[(g >> offset) & mask] += std::norm(state.amplitude_at(g));

    OutcomeDistribution dist;
    for (std::uint64_t k = 0; k <= mask; ++k)
        if (weights[k] >= kZeroProbability) dist[k] = weights[k];
    return dist;
}

PureState projective_solve(const PureState& state, std::string_view reg, std::uint64_t outcome) {
    const RegisterLayout& layout = state.layout();
    const int offset = layout.bit_offset(reg);
    const std::uint64_t mask = (std::uint64_t{1} << layout.width_of(reg)) - 1;

    double weight = 0.0;
    for (std::uint64_t g = 0; g < state.dimension(); ++g)
        if (((g >> offset) & mask) == outcome) weight += std::norm(state.amplitude_at(g));
    if (weight < kZeroProbability)
        throw UnreachableOutcome("outcome " + std::to_string(outcome) + " has zero Born weight on '" +
                                 std::string(reg) + "'");

    const double scale = 1.0 / std::sqrt(weight);
    std::vector<Complex> amps(state.dimension(), Complex{0.0, 0.0});
    for (std::uint64_t g = 0; g < state.dimension(); ++g)
        if (((g >> offset) & mask) == outcome) amps[g] = state.amplitude_at(g) * scale;
    return PureState(layout, std::move(amps));
}

MeasurementRecord measure_collapse(const PureState& state, std::string_view reg, RandomSource& rng) {
    const OutcomeDistribution dist = born_distribution(state, reg);
    const double draw = rng.uniform01();

    // Inverse CDF over outcomes in ascending integer order (std::map order).
    std::uint64_t outcome = dist.rbegin()->first;
    double probability = dist.rbegin()->second;
    double cumulative = 0.0;
    for (const auto& [k, p] : dist) {
        cumulative += p;
        if (draw < cumulative) {
            outcome = k;
            probability = p;
            break;
        }
    }
    return MeasurementRecord{std::string(reg), outcome, probability,
                             projective_solve(state, reg, outcome), draw};
}

PureState premeasure_von_neumann(const PureState& state, std::string_view reg) {
    const RegisterLayout& layout = state.layout();
    if (layout.has_register("P"))
        throw LayoutCollision("layout already contains a register named 'P'");
    const int width = layout.width_of(reg);
    const int offset = layout.bit_offset(reg);
    const std::uint64_t mask = (std::uint64_t{1} << width) - 1;

    std::vector<Register> registers = layout.registers();
    registers.push_back(Register{"P", width});
    RegisterLayout extended(std::move(registers));

    // P is the new least significant field: extended index = g * 2^width + p.
    std::vector<Complex> amps(extended.dimension(), Complex{0.0, 0.0});
    for (std::uint64_t g = 0; g < state.dimension(); ++g) {
        const Complex a = state.amplitude_at(g);
        if (a == Complex{0.0, 0.0}) continue;
        const std::uint64_t value = (g >> offset) & mask;
        amps[(g << width) | value] = a;
    }
    return PureState(std::move(extended), std::move(amps));
}

double backdate_check(const PureState& final_state, std::span<const GateOp> post_unitaries,
                      std::string_view reg, std::uint64_t outcome) {
    // Late collapse, undone through the suffix...
    PureState backdated = projective_solve(final_state, reg, outcome);
    for (auto it = post_unitaries.rbegin(); it != post_unitaries.rend(); ++it)
        backdated = apply_inverse(backdated, *it);

    // ...versus collapsing at the earlier instant.
    PureState earlier = final_state;
    for (auto it = post_unitaries.rbegin(); it != post_unitaries.rend(); ++it)
        earlier = apply_inverse(earlier, *it);
    const PureState collapsed_early = projective_solve(earlier, reg, outcome);

    return fidelity_up_to_phase(backdated, collapsed_early);
}

double tv_distance(const OutcomeDistribution& a, const OutcomeDistribution& b) {
    double sum = 0.0;
    for (const auto& [k, p] : a) {
        auto it = b.find(k);
        sum += std::abs(p - (it == b.end() ? 0.0 : it->second));
    }
    for (const auto& [k, p] : b)
        if (!a.count(k)) sum += p;
    return 0.5 * sum;
}

} // namespace vnmlab
