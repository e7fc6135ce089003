#include "vnmlab/statecore.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

namespace vnmlab {

int default_qubit_cap() {
    static const int cap = [] {
        if (const char* env = std::getenv("VNMLAB_QUBIT_CAP")) {
            char* end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end && *end == '\0' && v >= 1 && v <= 30) return static_cast<int>(v);
        }
        return 22;
    }();
    return cap;
}

RegisterLayout::RegisterLayout(std::vector<Register> registers, int qubit_cap)
    : registers_(std::move(registers)) {
    if (registers_.empty()) throw InvalidLayout("layout needs at least one register");
    std::set<std::string> seen;
    for (const auto& r : registers_) {
        if (r.width < 1) throw InvalidLayout("register '" + r.name + "' must have width >= 1");
        if (!seen.insert(r.name).second)
            throw InvalidLayout("duplicate register name '" + r.name + "'");
        total_width_ += r.width;
    }
    if (total_width_ > qubit_cap)
        throw InvalidLayout("total width " + std::to_string(total_width_) + " exceeds cap " +
                            std::to_string(qubit_cap));
    // bits below each register's field
    offsets_.resize(registers_.size());
    int below = total_width_;
    for (std::size_t i = 0; i < registers_.size(); ++i) {
        below -= registers_[i].width;
        offsets_[i] = below;
    }
}

bool RegisterLayout::has_register(std::string_view name) const {
    for (const auto& r : registers_)
        if (r.name == name) return true;
    return false;
}

const Register& RegisterLayout::find(std::string_view name) const {
    for (const auto& r : registers_)
        if (r.name == name) return r;
    throw UnknownRegister("unknown register '" + std::string(name) + "'");
}

int RegisterLayout::bit_offset(std::string_view name) const {
    for (std::size_t i = 0; i < registers_.size(); ++i)
        if (registers_[i].name == name) return offsets_[i];
    throw UnknownRegister("unknown register '" + std::string(name) + "'");
}

std::uint64_t RegisterLayout::extract(std::uint64_t global_index, std::string_view name) const {
    const Register& r = find(name);
    const std::uint64_t mask = (std::uint64_t{1} << r.width) - 1;
    return (global_index >> bit_offset(name)) & mask;
}

std::uint64_t RegisterLayout::replace(std::uint64_t global_index, std::string_view name,
                                      std::uint64_t value) const {
    const Register& r = find(name);
    const int off = bit_offset(name);
    const std::uint64_t mask = (std::uint64_t{1} << r.width) - 1;
    return (global_index & ~(mask << off)) | ((value & mask) << off);
}

bool RegisterLayout::operator==(const RegisterLayout& other) const {
    if (registers_.size() != other.registers_.size()) return false;
    for (std::size_t i = 0; i < registers_.size(); ++i)
        if (registers_[i].name != other.registers_[i].name ||
            registers_[i].width != other.registers_[i].width)
            return false;
    return true;
}

std::uint64_t global_index(const RegisterLayout& layout, const BasisAssignment& assignment) {
    if (assignment.size() != layout.registers().size())
        throw InvalidAssignment("assignment must name every layout register exactly once");
    std::uint64_t g = 0;
    for (const auto& r : layout.registers()) {
        auto it = assignment.find(r.name);
        if (it == assignment.end())
            throw InvalidAssignment("assignment missing register '" + r.name + "'");
        const std::uint64_t limit = std::uint64_t{1} << r.width;
        if (it->second >= limit)
            throw InvalidAssignment("value " + std::to_string(it->second) + " out of range for '" +
                                    r.name + "' (width " + std::to_string(r.width) + ")");
        g |= it->second << layout.bit_offset(r.name);
    }
    return g;
}

PureState::PureState(RegisterLayout layout, std::vector<Complex> amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != layout_.dimension())
        throw InvalidState("amplitude vector length " + std::to_string(amplitudes_.size()) +
                           " != 2^" + std::to_string(layout_.total_width()));
    if (std::abs(norm() - 1.0) > kInvariantTol)
        throw InvalidState("state norm deviates from 1 by more than 1e-9");
}

double PureState::norm() const {
    double s = 0.0;
    for (const Complex& a : amplitudes_) s += std::norm(a);
    return std::sqrt(s);
}

DensityMatrix::DensityMatrix(RegisterLayout layout, std::vector<Complex> entries)
    : layout_(std::move(layout)), entries_(std::move(entries)), dim_(layout_.dimension()) {
    if (entries_.size() != dim_ * dim_)
        throw InvalidState("density matrix must be 2^t x 2^t");
    double trace = 0.0;
    for (std::uint64_t i = 0; i < dim_; ++i) {
        trace += entries_[i * dim_ + i].real();
        if (std::abs(entries_[i * dim_ + i].imag()) > kInvariantTol)
            throw InvalidState("density matrix diagonal must be real");
        for (std::uint64_t j = i + 1; j < dim_; ++j) {
            const Complex d = entries_[i * dim_ + j] - std::conj(entries_[j * dim_ + i]);
            if (std::abs(d) > kInvariantTol)
                throw InvalidState("density matrix not Hermitian within 1e-9");
        }
    }
    if (std::abs(trace - 1.0) > kInvariantTol)
        throw InvalidState("density matrix trace deviates from 1 by more than 1e-9");
}

std::vector<double> DensityMatrix::eigenvalues() const {
    Eigen::MatrixXcd m(dim_, dim_);
    for (std::uint64_t i = 0; i < dim_; ++i)
        for (std::uint64_t j = 0; j < dim_; ++j) m(i, j) = at(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    std::vector<double> out(dim_);
    for (std::uint64_t i = 0; i < dim_; ++i) out[i] = solver.eigenvalues()(i);
    return out;
}

PureState prepare(const RegisterLayout& layout, const BasisAssignment& assignment) {
    std::vector<Complex> amps(layout.dimension(), Complex{0.0, 0.0});
    amps[global_index(layout, assignment)] = Complex{1.0, 0.0};
    return PureState(layout, std::move(amps));
}

Complex amplitude(const PureState& state, const BasisAssignment& assignment) {
    return state.amplitude_at(global_index(state.layout(), assignment));
}

double fidelity_up_to_phase(const PureState& a, const PureState& b) {
    if (!(a.layout() == b.layout()))
        throw LayoutMismatch("fidelity requires identical register layouts");
    Complex inner{0.0, 0.0};
    for (std::uint64_t i = 0; i < a.dimension(); ++i)
        inner += std::conj(a.amplitude_at(i)) * b.amplitude_at(i);
    return std::norm(inner);
}

DensityMatrix mix_to_density(std::span<const PureState> states, std::span<const double> weights) {
    if (states.empty() || states.size() != weights.size())
        throw InvalidWeights("need one weight per state");
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw InvalidWeights("weights must be nonnegative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > kInvariantTol)
        throw InvalidWeights("weights must sum to 1 within 1e-9");
    const RegisterLayout& layout = states.front().layout();
    for (const PureState& s : states)
        if (!(s.layout() == layout)) throw LayoutMismatch("mixture states share one layout");

    const std::uint64_t d = layout.dimension();
    std::vector<Complex> rho(d * d, Complex{0.0, 0.0});
    for (std::size_t k = 0; k < states.size(); ++k) {
        const auto amps = states[k].amplitudes();
        const double w = weights[k];
        if (w == 0.0) continue;
        for (std::uint64_t i = 0; i < d; ++i) {
            if (amps[i] == Complex{0.0, 0.0}) continue;
            const Complex wi = w * amps[i];
            for (std::uint64_t j = 0; j < d; ++j) rho[i * d + j] += wi * std::conj(amps[j]);
        }
    }
    return DensityMatrix(layout, std::move(rho));
}

DensityMatrix partial_trace(const DensityMatrix& dm, std::span<const std::string> keep) {
    const RegisterLayout& layout = dm.layout();
    if (keep.empty()) throw UnknownRegister("keep list must be a nonempty subset of registers");
    std::set<std::string> kept(keep.begin(), keep.end());
    if (kept.size() != keep.size()) throw UnknownRegister("duplicate register in keep list");
    for (const std::string& name : keep) layout.find(name); // throws if unknown

    // Reduced layout preserves declaration order among the kept registers.
    std::vector<Register> kept_regs;
    std::vector<Register> traced_regs;
    for (const auto& r : layout.registers())
        (kept.count(r.name) ? kept_regs : traced_regs).push_back(r);
    RegisterLayout reduced(kept_regs, layout.total_width());

    const std::uint64_t rd = reduced.dimension();
    std::vector<Complex> out(rd * rd, Complex{0.0, 0.0});

    // Compose a full index from a reduced index and a traced-subspace index.
    std::uint64_t traced_dim = 1;
    for (const auto& r : traced_regs) traced_dim <<= r.width;
    auto compose = [&](std::uint64_t reduced_index, std::uint64_t traced_index) {
        std::uint64_t g = 0;
        for (const auto& r : kept_regs)
            g = layout.replace(g, r.name, reduced.extract(reduced_index, r.name));
        int consumed = 0;
        for (auto it = traced_regs.rbegin(); it != traced_regs.rend(); ++it) {
            const std::uint64_t v = (traced_index >> consumed) & ((std::uint64_t{1} << it->width) - 1);
            g = layout.replace(g, it->name, v);
            consumed += it->width;
        }
        return g;
    };

    for (std::uint64_t i = 0; i < rd; ++i)
        for (std::uint64_t j = 0; j < rd; ++j) {
            Complex acc{0.0, 0.0};
            for (std::uint64_t t = 0; t < traced_dim; ++t)
                acc += dm.at(compose(i, t), compose(j, t));
            out[i * rd + j] = acc;
        }
    return DensityMatrix(std::move(reduced), std::move(out));
}

PureState canonicalize_global_phase(const PureState& state) {
    for (const Complex& a : state.amplitudes()) {
        if (std::abs(a) > 1e-12) {
            const Complex rot = std::conj(a) / std::abs(a);
            std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
            for (Complex& x : amps) x *= rot;
            return PureState(state.layout(), std::move(amps));
        }
    }
    return state;
}

} // namespace vnmlab
