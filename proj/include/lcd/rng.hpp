#pragma once

#include <cstdint>

namespace lcd {

// Counter-based generator (splitmix64). Every draw advances a counter by a
// fixed odd constant and hashes it, so a stream is a pure function of its
// initial state. Shot k of a run seeded with `seed` uses the stream with
// initial state seed ^ k, which makes any shot reproducible in isolation.
struct Rng {
    uint64_t counter = 0;

    explicit Rng(uint64_t state) : counter(state) {}

    static Rng for_shot(uint64_t seed, uint64_t shot) { return Rng(seed ^ shot); }

    uint64_t next_u64() {
        uint64_t z = (counter += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return next_double() < p;
    }

    bool next_bit() { return next_u64() >> 63; }

    // Uniform integer in [0, n).
    uint64_t next_below(uint64_t n) {
        // Rejection-free multiply-shift; bias is negligible for the small n
        // used here (n <= 15).
        return (static_cast<unsigned __int128>(next_u64()) * n) >> 64;
    }
};

}  // namespace lcd
