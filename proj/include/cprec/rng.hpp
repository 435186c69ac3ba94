#ifndef CPREC_RNG_HPP
#define CPREC_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace cprec {

/// Seeded random source with portable derived draws.
///
/// std::shuffle and the std distributions are implementation-defined, so
/// bounded integers, unit reals and shuffling are derived here from the raw
/// mt19937_64 stream. Identical seeds give identical streams on every
/// platform, which the experiment harness relies on for reproducible runs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t bounded(std::uint64_t n) {
        // Rejection sampling on the top part of the range; unbiased.
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t x = next_u64();
            if (x >= threshold) return x % n;
        }
    }

    /// Uniform real in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform real in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    bool chance(double p) { return unit() < p; }

    /// Fisher-Yates shuffle driven by bounded().
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(bounded(i));
            using std::swap;
            swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

/// Derive a child seed from a base seed and a textual tag (FNV-1a mix).
inline std::uint64_t mix_seed(std::uint64_t base, std::string_view tag) {
    std::uint64_t h = 14695981039346656037ull ^ base;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    // Final avalanche so nearby bases do not give nearby streams.
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
    return h;
}

} // namespace cprec

#endif // CPREC_RNG_HPP
