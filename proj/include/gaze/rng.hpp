#pragma once

#include <cmath>
#include <cstdint>

namespace gaze {

/// Deterministic 64-bit PRNG (splitmix64). Used instead of the standard
/// distributions so that seeded runs replay identically on every platform
/// and under any execution order.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [a, b).
    double uniform(double a, double b) {
        return a + uniform() * (b - a);
    }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t bounded(std::uint64_t n) {
        return next() % n;
    }

    /// Standard normal via Box-Muller. Always consumes exactly two draws.
    double gaussian() {
        const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

private:
    std::uint64_t state_;
};

/// Derives an independent stream seed for (seed, stream_index) pairs, so
/// per-frame generators replay identically regardless of processing order.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream_index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream_index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace gaze
