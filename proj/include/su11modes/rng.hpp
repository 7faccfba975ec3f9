#ifndef SU11MODES_RNG_HPP
#define SU11MODES_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace su11modes {

// Counter-based randomness: every variate is a pure function of
// (seed, a, b, c), so frame synthesis is reproducible regardless of
// evaluation order or thread count.

inline std::uint64_t rng_mix(std::uint64_t x) {
    // SplitMix64 finalizer
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

inline std::uint64_t rng_word(std::uint64_t seed, std::uint64_t a,
                              std::uint64_t b, std::uint64_t c) {
    constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ull;
    std::uint64_t x = rng_mix(seed + golden);
    x = rng_mix(x + a + golden);
    x = rng_mix(x + b + golden);
    x = rng_mix(x + c + golden);
    return x;
}

// Uniform in the open interval (0, 1).
inline double rng_uniform(std::uint64_t word) {
    return (static_cast<double>(word >> 11) + 0.5) * 0x1p-53;
}

// Circular complex Gaussian with <|c|^2> = 1 (Re, Im each N(0, 1/2)).
inline std::complex<double> rng_circular_gaussian(std::uint64_t seed, std::uint64_t a,
                                                  std::uint64_t b) {
    const double u = rng_uniform(rng_word(seed, a, b, 0));
    const double v = rng_uniform(rng_word(seed, a, b, 1));
    const double r = std::sqrt(-std::log(u));
    const double ang = 2.0 * std::numbers::pi * v;
    return {r * std::cos(ang), r * std::sin(ang)};
}

// Standard normal via Box-Muller.
inline double rng_gaussian(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    const double u = rng_uniform(rng_word(seed, a, b, 0));
    const double v = rng_uniform(rng_word(seed, a, b, 1));
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

} // namespace su11modes

#endif
