#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace scint {

// ---------------------------------------------------------------------------
// Deterministic random number pipeline.
//
// Reproducibility is a hard requirement here (identical seeds must reproduce
// byte-identical output files, independent of thread count), so every stage
// is pinned:
//   * engine:   std::mt19937_64 — its output sequence is fully specified by
//               the C++ standard, unlike the distributions;
//   * gaussian: hand-rolled Box–Muller on 53-bit uniforms (libstdc++'s
//               normal_distribution algorithm is implementation-defined);
//   * streams:  derived from (seed, index) via splitmix64 mixing so nearby
//               user seeds do not produce overlapping trajectory streams.
// The generator name below is recorded in every run manifest.
// ---------------------------------------------------------------------------

inline constexpr const char* kGeneratorName = "mt19937_64+box-muller";
inline constexpr const char* kGeneratorVersion = "1";

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

/// splitmix64 finalizer; good avalanche, used only for seed derivation.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += kGoldenGamma;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Seed for the RNG stream of trajectory `index` under master seed `seed`.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ (kGoldenGamma * (index + 1)));
}

/// Gaussian variate stream: mt19937_64 + Box–Muller with pair caching.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t stream_seed) : engine_(stream_seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Standard normal variate.
    double gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        // u1 in (0, 1] so the log is finite.
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    /// Normal variate with standard deviation `sigma`.
    double gaussian(double sigma) { return sigma * gaussian(); }

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace scint
