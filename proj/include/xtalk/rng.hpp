#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace xtalk {

// All randomness in the simulator flows through seeds derived here, so that
// results are bit-identical across runs, platforms, and worker counts.
// std::mt19937_64 output is fully specified by the standard; we avoid
// std::*_distribution (implementation-defined) and map raw words ourselves.

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t fnv1a64(std::string_view s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Derives an independent stream seed from a master seed and a tag.
inline uint64_t derive_seed(uint64_t master, std::string_view tag) {
    return splitmix64(master ^ fnv1a64(tag));
}

inline uint64_t derive_seed(uint64_t master, std::string_view tag, uint64_t index) {
    return splitmix64(derive_seed(master, tag) + 0x9e3779b97f4a7c15ULL * (index + 1));
}

class Rng {
  public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    // Uniform double in [0,1) with 53 random bits.
    double next_double() { return (engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    // Uniform integer in [0, n).
    uint64_t next_below(uint64_t n) {
        // Rejection sampling keeps the draw unbiased.
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t v = engine_();
        while (v >= limit) v = engine_();
        return v % n;
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace xtalk
