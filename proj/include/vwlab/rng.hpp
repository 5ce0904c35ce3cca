#pragma once

#include <cstdint>

namespace vwlab {

// Counter-based generator: every drawn number is a pure function of
// (seed, stream, counter), so independent subtasks can consume their own
// streams in any order and still reproduce bit-for-bit.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(splitmix64(seed)) {}
    Rng(std::uint64_t seed, std::uint64_t stream)
        : state(splitmix64(splitmix64(seed) ^ (0x9E3779B97F4A7C15ULL * (stream + 1)))) {}

    std::uint64_t next_u64() {
        state = splitmix64(state);
        return state;
    }

    // uniform in [0,1), 53 significant bits
    double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [-1,1]
    double next_sym() { return 2.0 * next_unit() - 1.0; }

    // uniform in [lo,hi]
    double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }
};

// Stable stream id from a small tuple of tags; used to key field modes so a
// sampled field is the same continuum object on every grid size.
inline std::uint64_t stream_id(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0,
                               std::uint64_t d = 0, std::uint64_t e = 0) {
    std::uint64_t h = splitmix64(a);
    h = splitmix64(h ^ (b + 0x100));
    h = splitmix64(h ^ (c + 0x10000));
    h = splitmix64(h ^ (d + 0x1000000));
    h = splitmix64(h ^ (e + 0x100000000ULL));
    return h;
}

} // namespace vwlab
