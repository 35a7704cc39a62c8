#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <vector>

namespace gibbsgraph {

/// Splittable 64-bit generator (splitmix64 by Steele/Vigna).
///
/// Every randomized entry point in the library takes an explicit 64-bit seed
/// and builds one of these; there is no global RNG state and no dependence on
/// std:: distribution internals, so streams are reproducible across platforms
/// and library versions.  Independent substreams (replicas, stages) are
/// derived with mix_seed().
class SplitMix64 {
  public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr std::uint64_t min() { return 0; }
    static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

    std::uint64_t operator()() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform double in [a, b).
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Standard exponential variate.  -log1p(-u) is exact at both ends:
    /// u in [0,1) keeps the argument in (-1, 0], so the result is finite.
    double exponential() { return -std::log1p(-uniform()); }

    /// Unbiased integer in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n) {
        assert(n > 0);
        const std::uint64_t limit = max() - max() % n;
        std::uint64_t x;
        do {
            x = (*this)();
        } while (x >= limit);
        return x % n;
    }

  private:
    std::uint64_t state_;
};

/// Derives an independent stream seed from a base seed and a tag (replica
/// index, stage number, ...).  Deterministic; distinct tags give streams that
/// are decorrelated for all practical purposes.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
    SplitMix64 g(seed ^ (tag + 1) * 0x9e3779b97f4a7c15ull);
    g();
    return g();
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return mix_seed(mix_seed(seed, a), b);
}

/// Poisson(mean) count by summing exponential arrivals.  Exact and O(mean);
/// fine for the window intensities this library works at.
inline std::uint64_t poisson_count(double mean, SplitMix64& rng) {
    assert(mean >= 0.0);
    std::uint64_t k = 0;
    double s = rng.exponential();
    while (s <= mean) {
        ++k;
        s += rng.exponential();
    }
    return k;
}

/// Fisher-Yates shuffle driven by the given stream.
template <typename T>
void shuffle(std::vector<T>& v, SplitMix64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = rng.below(i);
        std::swap(v[i - 1], v[j]);
    }
}

} // namespace gibbsgraph
