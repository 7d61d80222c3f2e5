#pragma once

#include <cstdint>
#include <random>

namespace urnlab {

/// splitmix64 mixing step; decorrelates nearby seed values.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Stream rule for trajectory ensembles: trajectory i runs on seed ^ i.
inline std::uint64_t stream_seed(std::uint64_t base_seed, std::uint64_t index) {
    return base_seed ^ index;
}

/// Seeded 64-bit generator. Wraps std::mt19937_64 (whose output sequence the
/// standard pins down exactly) behind a splitmix64-scrambled seed, and
/// converts to doubles without touching the unspecified distribution classes,
/// so streams are bit-reproducible across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    std::uint64_t bits() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace urnlab
