#pragma once

#include <cstdint>

namespace zi {

// SplitMix64 finalizer. Used as a keyed hash so that random test functions
// are reproducible across implementations: the value attached to a prime
// ideal depends only on (seed, norm, kind), never on evaluation order.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Uniform double in [0, 1) from the top 53 bits.
constexpr double unit_interval(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Sequential generator over the same mixer, for test data and parameter
// lattices.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        std::uint64_t out = splitmix64(state_);
        state_ += 0x9E3779B97F4A7C15ULL;
        return out;
    }
    constexpr double uniform() noexcept { return unit_interval(next()); }

private:
    std::uint64_t state_;
};

} // namespace zi
