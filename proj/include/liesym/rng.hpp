#pragma once

#include <cmath>
#include <cstdint>

namespace liesym {

/// SplitMix64 generator. Fixed algorithm so that seeded runs reproduce
/// bit-for-bit regardless of platform or library version. Substreams are
/// derived by hashing (seed, stream id), which makes per-sample generation
/// order-independent.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    static uint64_t mix(uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static Rng substream(uint64_t seed, uint64_t stream_id) {
        return Rng(mix(seed) ^ mix(stream_id * 0xD1B54A32D192ED03ULL + 0x8BB84B93962EACC9ULL));
    }

    uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// uniform in [0, 1)
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// standard normal via Box-Muller (uses two draws per call; no caching,
    /// so the draw count per sample is fixed and stream splits stay aligned)
    double normal() {
        double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// integer in [0, n)
    uint64_t below(uint64_t n) { return next_u64() % n; }

  private:
    uint64_t state_;
};

}  // namespace liesym
