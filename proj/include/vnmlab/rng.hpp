#pragma once

#include <cstdint>
#include <numbers>
#include <random>

namespace vnmlab {

/// Deterministic random source. Wraps mt19937_64 and derives doubles by hand
/// so that a seed produces the same stream on every platform and standard
/// library (std::uniform_real_distribution makes no such promise).
class RandomSource {
  public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform angle in [0, 2*pi).
    double uniform_angle() { return uniform01() * 2.0 * std::numbers::pi; }

    /// Uniform integer in [0, n), n >= 1. Rejection sampling, no modulo bias.
    std::uint64_t uniform_below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

    std::uint64_t raw() { return engine_(); }

  private:
    std::mt19937_64 engine_;
};

/// splitmix64 step; used to derive independent per-run seeds from a master seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace vnmlab
