#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace glow {

/// Seeded random stream with portable distributions.
///
/// All stochastic operations in the library take an explicit Rng so callers
/// own their streams. Gaussian and uniform draws are implemented directly
/// (Box-Muller, 53-bit mantissa scaling) rather than through
/// std::*_distribution, whose output is implementation-defined; a given seed
/// therefore produces the same stream on any platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Raw 64-bit draw.
    std::uint64_t raw() {
        ++draws_;
        return gen_();
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(raw() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Log-uniform in [lo, hi], lo > 0.
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    /// Standard Gaussian via Box-Muller. Consumes two uniforms per draw.
    double normal() {
        double u1 = uniform();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double u2 = uniform();
        constexpr double two_pi = 6.283185307179586476925286766559;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

    /// Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(raw() % span);
    }

    /// Number of raw draws consumed so far; used by tests that instrument
    /// stream consumption.
    std::uint64_t draw_count() const { return draws_; }

    /// Derives an independent child seed, e.g. one stream per scene.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
        // splitmix64 finalizer over seed+index
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

  private:
    std::mt19937_64 gen_;
    std::uint64_t draws_ = 0;
};

}  // namespace glow
