#pragma once

#include <cmath>
#include <cstdint>

#include "ufcp/cmat.hpp"

namespace ufcp {

// splitmix64 (Vigna). Chosen over <random> engines so that streams are
// counter-addressable and bit-identical across compilers and worker counts.
struct SplitMix64 {
    std::uint64_t state = 0;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 33;
    z *= 0xff51afd7ed558ccdULL;
    z ^= z >> 33;
    z *= 0xc4ceb9fe1a85ec53ULL;
    z ^= z >> 33;
    return z;
}

// Independent stream addressed by (seed, a, b); used as (seed, snr point, trial)
// so results never depend on how trials are split across workers.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return SplitMix64{mix64(mix64(mix64(seed ^ 0x6a09e667f3bcc909ULL) + a) + b)};
}

// Box-Muller; two N(0,1) samples per call.
inline void gaussian_pair(SplitMix64& g, double& z0, double& z1) {
    double u1 = g.next_double();
    while (u1 <= 0.0) u1 = g.next_double();
    double u2 = g.next_double();
    double rad = std::sqrt(-2.0 * std::log(u1));
    double ang = 6.283185307179586476925286766559 * u2;
    z0 = rad * std::cos(ang);
    z1 = rad * std::sin(ang);
}

// CN(0,1): real and imaginary parts each N(0, 1/2).
inline cplx gaussian_complex(SplitMix64& g) {
    double a, b;
    gaussian_pair(g, a, b);
    return {a * 0.7071067811865475244, b * 0.7071067811865475244};
}

}  // namespace ufcp
