#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vnmlab/errors.hpp"

namespace vnmlab {

using Complex = std::complex<double>;

/// Type-invariant tolerance (norms, Hermiticity, trace).
inline constexpr double kInvariantTol = 1e-9;
/// Tolerance for analytic state checks; states here are exact dyadic
/// rationals over powers of sqrt(2), so this is safe.
inline constexpr double kAnalyticTol = 1e-12;
/// Born weights below this are treated as unreachable outcomes.
inline constexpr double kZeroProbability = 1e-14;

/// Layout cap in qubits; VNMLAB_QUBIT_CAP overrides (read once per process).
int default_qubit_cap();

struct Register {
    std::string name;
    int width = 0; // qubits
};

/// Ordered roster of named qubit registers. The global basis index
/// concatenates registers in declaration order, first register most
/// significant, each register's bits read MSB-first as an unsigned integer.
class RegisterLayout {
  public:
    RegisterLayout() = default;
    explicit RegisterLayout(std::vector<Register> registers, int qubit_cap = default_qubit_cap());

    const std::vector<Register>& registers() const { return registers_; }
    int total_width() const { return total_width_; }
    std::uint64_t dimension() const { return std::uint64_t{1} << total_width_; }

    bool has_register(std::string_view name) const;
    const Register& find(std::string_view name) const; // throws UnknownRegister
    /// Number of bits below the register's field in the global index.
    int bit_offset(std::string_view name) const;
    int width_of(std::string_view name) const { return find(name).width; }

    /// Value of a register's field within a global basis index.
    std::uint64_t extract(std::uint64_t global_index, std::string_view name) const;
    /// Global index with one register's field replaced.
    std::uint64_t replace(std::uint64_t global_index, std::string_view name, std::uint64_t value) const;

    bool operator==(const RegisterLayout& other) const;

  private:
    std::vector<Register> registers_;
    std::vector<int> offsets_; // parallel to registers_
    int total_width_ = 0;
};

/// Names a basis vector: register name -> register value.
using BasisAssignment = std::map<std::string, std::uint64_t>;

/// Global basis index of an assignment; every layout register must appear
/// exactly once and be in range. Throws InvalidAssignment.
std::uint64_t global_index(const RegisterLayout& layout, const BasisAssignment& assignment);

/// Normalized pure state over a register layout. Immutable in practice:
/// every operation returns a fresh state.
class PureState {
  public:
    PureState(RegisterLayout layout, std::vector<Complex> amplitudes);

    const RegisterLayout& layout() const { return layout_; }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    Complex amplitude_at(std::uint64_t global_index) const { return amplitudes_[global_index]; }
    std::uint64_t dimension() const { return amplitudes_.size(); }

    double norm() const;

  private:
    RegisterLayout layout_;
    std::vector<Complex> amplitudes_;
};

/// Hermitian, trace-1 matrix over the layout's full Hilbert space.
class DensityMatrix {
  public:
    DensityMatrix(RegisterLayout layout, std::vector<Complex> entries);

    const RegisterLayout& layout() const { return layout_; }
    std::uint64_t dim() const { return dim_; }
    Complex at(std::uint64_t row, std::uint64_t col) const { return entries_[row * dim_ + col]; }
    std::span<const Complex> entries() const { return entries_; }

    /// Real spectrum in ascending order (the matrix is Hermitian).
    std::vector<double> eigenvalues() const;

  private:
    RegisterLayout layout_;
    std::vector<Complex> entries_;
    std::uint64_t dim_ = 0;
};

/// Basis state |assignment> with amplitude one on the named label.
PureState prepare(const RegisterLayout& layout, const BasisAssignment& assignment);

/// Stored coefficient of a basis label.
Complex amplitude(const PureState& state, const BasisAssignment& assignment);

/// |<a|b>|^2. 1 iff the states agree up to a global phase.
double fidelity_up_to_phase(const PureState& a, const PureState& b);

/// Convex mixture sum_i w_i |psi_i><psi_i|.
DensityMatrix mix_to_density(std::span<const PureState> states, std::span<const double> weights);

/// Reduced density matrix on the kept registers (layout declaration order).
DensityMatrix partial_trace(const DensityMatrix& dm, std::span<const std::string> keep);

/// Rotates so the first nonzero amplitude is real positive. Reporting only.
PureState canonicalize_global_phase(const PureState& state);

/// Parity of the bitwise AND of two basis labels (the "module 2 inner product").
inline int and_parity(std::uint64_t a, std::uint64_t b) {
    return static_cast<int>(__builtin_parityll(a & b));
}

} // namespace vnmlab
