#pragma once

// Seedable random generator used by every stochastic operation in the
// library. No global state: callers construct one per trial (or stream)
// and pass it down. All distributions are implemented on top of the raw
// engine so that a given seed produces the same draw sequence on every
// platform.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace selfple {

// SplitMix64 finalizer; also the documented per-stream seed derivation.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Derivation rule for independent sub-streams (trial workers, sweep
// cells): stream k of a master seed s is seeded with
// splitmix64(s + (k + 1) * 0x9E3779B97F4A7C15).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master + (stream + 1) * 0x9E3779B97F4A7C15ULL);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0, 1]; used where log(u) must stay finite.
    double uniform_pos() { return 1.0 - uniform(); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via the Marsaglia polar method (second draw cached).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    double normal(double mean, double sigma) { return mean + sigma * normal(); }

    // Gamma(shape, scale=1) via Marsaglia-Tsang; shape < 1 handled by the
    // boost gamma(shape+1) * U^(1/shape).
    double gamma(double shape) {
        if (!(shape > 0.0))
            throw std::invalid_argument("Rng::gamma: shape must be positive");
        if (shape < 1.0)
            return gamma(shape + 1.0) * std::pow(uniform_pos(), 1.0 / shape);
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform_pos();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace selfple
