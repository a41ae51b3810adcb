#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace balanced_f1 {

/// Mixes a master seed with a stream index into an independent 64-bit seed.
/// splitmix64 finalizer; streams derived from distinct indices do not collide
/// in practice and are stable across platforms.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic random source. All draws are built from raw mt19937_64
/// output (which the standard pins down bit-exactly), so sequences are
/// reproducible across compilers and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    /// Uniform integer in [lo, hi], inclusive. Rejection keeps it unbiased.
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
        if (lo > hi) throw std::invalid_argument("uniform_int: lo > hi");
        const std::uint64_t range = hi - lo + 1;
        if (range == 0) return engine_();  // full 64-bit range
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
        std::uint64_t u;
        do {
            u = engine_();
        } while (u >= limit);
        return lo + u % range;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Box-Muller; two uniforms per draw, no cached state.
    double normal(double mu, double sigma) {
        const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mu + sigma * r * std::cos(2.0 * M_PI * u2);
    }

    /// Gaussian conditioned on [0, 1] via rejection. sigma <= 0 degenerates
    /// to the clamped mean.
    double truncated_normal01(double mu, double sigma) {
        if (sigma <= 0.0) return std::min(1.0, std::max(0.0, mu));
        for (int i = 0; i < 10000; ++i) {
            const double x = normal(mu, sigma);
            if (x >= 0.0 && x <= 1.0) return x;
        }
        return std::min(1.0, std::max(0.0, mu));
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace balanced_f1
