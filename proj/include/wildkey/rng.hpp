#pragma once
#include <cmath>
#include <cstdint>
#include <string>

namespace wildkey {

// Deterministic PRNG used everywhere randomness is needed (simulator, phrase
// shuffling, token generation). splitmix64 core; all derived samplers are
// implemented here so output is identical across platforms and standard
// libraries. std::*_distribution is implementation-defined and must not be
// used on reproducibility paths.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Unbiased integer in [0, bound). bound must be > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform double in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform double in [lo, hi).
    double next_double(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    bool next_bernoulli(double p) { return next_double() < p; }

    // Box-Muller; the second variate is discarded to keep state a single u64.
    double next_normal(double mean, double sd) {
        double u1 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        double u2 = next_double();
        double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
        return mean + sd * z;
    }

    // Normal resampled until >= lo.
    double next_truncated_normal(double mean, double sd, double lo) {
        double x = next_normal(mean, sd);
        while (x < lo) x = next_normal(mean, sd);
        return x;
    }

  private:
    std::uint64_t state_;
};

// FNV-1a, used to fold string ids into seeds.
inline std::uint64_t hash64(const std::string& s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

}  // namespace wildkey
