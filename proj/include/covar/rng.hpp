#ifndef COVAR_RNG_HPP
#define COVAR_RNG_HPP

#include <cstdint>

#include "covar/normal.hpp"

namespace covar {

/// SplitMix64 finalizer; full-avalanche 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derives an independent sub-seed from a base seed and up to two stream
/// labels (e.g. sample size and replication index). Replication r of a
/// study uses derive_seed(base_seed, n, r), so studies are reproducible
/// and replications can run in any order or thread.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                    std::uint64_t b = 0) noexcept {
    constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;
    std::uint64_t h = mix64(base + golden);
    h = mix64(h ^ mix64(a + golden));
    h = mix64(h ^ mix64(b + 0xD1B54A32D192ED03ULL));
    return h;
}

/// Counter-based uniform/normal generator built on the SplitMix64 stream.
///
/// Draw i is a pure function of (seed, i), so output never depends on call
/// order or thread count: any partition of the counter space reproduces
/// the same sample bit for bit.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

    /// Uniform draw in the open interval (0,1) at the given counter.
    double uniform_at(std::uint64_t counter) const noexcept {
        constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;
        std::uint64_t bits = mix64(seed_ + (counter + 1) * golden);
        // 53-bit mantissa, offset by half an ulp to stay strictly inside (0,1).
        return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal draw at the given counter (inverse-CDF sampling).
    double normal_at(std::uint64_t counter) const {
        return normal_inverse_cdf(uniform_at(counter));
    }

    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t seed_;
};

} // namespace covar

#endif // COVAR_RNG_HPP
