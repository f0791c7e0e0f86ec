#pragma once

#include <cstdint>

namespace chu {

/// Small deterministic generator (splitmix64 stream). The standard library
/// distributions are implementation-defined, so everything seeded goes
/// through this to keep outputs reproducible across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [-1, 1).
    double next_signed() { return 2.0 * next_double() - 1.0; }

    /// Uniform integer in [0, bound).
    std::uint64_t next_below(std::uint64_t bound) {
        return next_u64() % bound; // bias negligible for our bounds
    }

private:
    std::uint64_t state_;
};

} // namespace chu
