#pragma once

#include <cstdint>

namespace catlab {

// Counter-based pseudo-random stream: the state is a key plus a counter, and
// each draw applies a 64-bit finalizer-style mix to key + counter * GOLDEN.
// Streams derived from distinct (seed, replicate, domain) triples are
// statistically independent for Monte Carlo purposes, and a stream can be
// recreated cheaply at any time — which is what makes replicate-parallel runs
// order-independent and exactly replayable.
class RngStream {
public:
    // domain separates independent draw purposes inside one replicate
    // (e.g. event decisions vs. inter-event times), so consuming one domain
    // never perturbs another.
    RngStream(std::uint64_t seed, std::uint64_t replicate, std::uint64_t domain)
        : key_(derive_key(seed, replicate, domain)), ctr_(0) {}

    std::uint64_t next_u64() { return mix(key_ + (++ctr_) * GOLDEN); }

    // Uniform double in [0, 1), 53-bit resolution.
    double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform double in (0, 1); safe as a logarithm argument.
    double next_unit_open() { return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    // Uniform integer in {0, ..., n-1} by the multiply-high (fixed-point)
    // method: rejection-free; the bias is at most n / 2^64, negligible for
    // every n used here (n <= ~1e9).
    std::uint64_t next_below(std::uint64_t n) {
        return std::uint64_t((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

private:
    static constexpr std::uint64_t GOLDEN = 0x9E3779B97F4A7C15ull;

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t replicate,
                                    std::uint64_t domain) {
        std::uint64_t k = mix(seed + GOLDEN);
        k = mix(k ^ (replicate + GOLDEN));
        k = mix(k ^ (domain + GOLDEN));
        return k;
    }

    std::uint64_t key_;
    std::uint64_t ctr_;
};

}  // namespace catlab
