#pragma once

#include <cmath>
#include <cstdint>

#include "expertkm/errors.hpp"

namespace expertkm {
namespace rng {

// Counter-based generator: every variate is a pure function of
// (seed, stream, observation index, sub-counter), so draws are reproducible
// and independent of evaluation order, and prefixes are stable in n.

inline constexpr std::uint64_t stream_event = 1;
inline constexpr std::uint64_t stream_contaminant = 2;
inline constexpr std::uint64_t stream_censor = 3;
inline constexpr std::uint64_t stream_bernoulli = 4;
inline constexpr std::uint64_t stream_noise_location = 5;
inline constexpr std::uint64_t stream_noise_scale = 6;

inline std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t bits(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                          std::uint64_t sub = 0) {
    std::uint64_t h = mix(seed);
    h = mix(h ^ mix(stream ^ 0xbf58476d1ce4e5b9ULL));
    h = mix(h ^ mix(index ^ 0x94d049bb133111ebULL));
    h = mix(h ^ mix(sub ^ 0xd6e8feb86659fd93ULL));
    return h;
}

// Uniform on [0, 1) with 53 random bits.
inline double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                      std::uint64_t sub = 0) {
    return static_cast<double>(bits(seed, stream, index, sub) >> 11) * 0x1.0p-53;
}

// Unit-mean exponential via inverse transform; finite for u in [0, 1).
inline double exponential(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                          std::uint64_t sub = 0) {
    return -std::log1p(-uniform(seed, stream, index, sub));
}

// Standard normal from two uniforms (Box-Muller, cosine branch).
inline double normal_from(double u1, double u2) {
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    return r * std::cos(6.283185307179586477 * u2);
}

// Marsaglia-Tsang with attempt-indexed sub-counters: attempt k consumes the
// uniforms at sub-counters 3k, 3k+1, 3k+2. Shapes below one use the boost
// trick with a dedicated uniform far outside the attempt range.
inline double gamma(std::uint64_t seed, std::uint64_t stream, std::uint64_t index, double shape,
                    double rate) {
    if (!(shape > 0.0) || !(rate > 0.0) || !std::isfinite(shape) || !std::isfinite(rate))
        throw ValidationError("gamma draw requires positive finite shape and rate");
    double boost = 1.0;
    double alpha = shape;
    if (alpha < 1.0) {
        const double u = uniform(seed, stream, index, 0x40000000ULL);
        boost = std::pow(u, 1.0 / alpha);
        alpha += 1.0;
    }
    const double d = alpha - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (std::uint64_t k = 0; k < 1024; ++k) {
        const double x = normal_from(uniform(seed, stream, index, 3 * k),
                                     uniform(seed, stream, index, 3 * k + 1));
        const double t = 1.0 + c * x;
        if (t <= 0.0) continue;
        const double v = t * t * t;
        const double u = uniform(seed, stream, index, 3 * k + 2);
        const double xx = x * x;
        if (u < 1.0 - 0.0331 * xx * xx || std::log(u) < 0.5 * xx + d * (1.0 - v + std::log(v)))
            return boost * d * v / rate;
    }
    throw NumericError("gamma draw did not accept after 1024 attempts");
}

}  // namespace rng
}  // namespace expertkm
