#pragma once

#include <cstdint>
#include <span>

namespace plmu {

// Deterministic 64-bit generator (splitmix64). std::mt19937 would also be
// reproducible, but the standard distributions are not specified bit-for-bit
// across library implementations, and golden tests pin exact outputs.
struct Rng {
    uint64_t state = 0;

    explicit Rng(uint64_t seed = 0) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n), n >= 1
    uint64_t below(uint64_t n) { return next() % n; }

    // uniform in [0, 1)
    double real01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool chance(double p) { return real01() < p; }
};

// Order-sensitive mixing of words into a single 64-bit value.
inline uint64_t mix64(uint64_t a, uint64_t b) {
    uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t hashSpan(uint64_t seed, std::span<const uint32_t> xs) {
    uint64_t h = seed;
    for (uint32_t x : xs) h = mix64(h, x);
    return h;
}

} // namespace plmu
