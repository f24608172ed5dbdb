#pragma once
// Deterministic random number generation for verification sweeps. A
// self-contained splitmix64 stream keeps reports byte-identical across
// platforms and standard library versions.

#include "thetadiv/siegel.hpp"

#include <cstdint>

namespace thetadiv {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    double uniform();                      // [0, 1)
    double uniform(double lo, double hi);  // [lo, hi)
    long long uniform_int(long long lo, long long hi);  // inclusive
    Complex complex_box(double re_lo, double re_hi, double im_lo, double im_hi);
    CVec complex_vector(int n, double half_width);  // entries in [-w,w] x i[-w,w]
    CVec unit_direction(int n);
    std::vector<long long> int_vector(int n, long long lo, long long hi);

private:
    std::uint64_t state_;
};

// tau = i I + S + i E with S symmetric, entries uniform in [-0.3, 0.3], and
// E = 0.2 P P^T / max(1, ||P P^T||_F) positive semidefinite; the imaginary
// part stays well conditioned so truncation radii stay small.
SiegelMatrix random_tau_near_i(int n, Rng& rng);

// Resamples random_tau_near_i (2x2) until the even theta constants clear the
// decomposability threshold.
SiegelMatrix random_tau_indecomposable(Rng& rng, double epsilon);

// 1x1 tau with Re in [-1, 1], Im in [0.5, 3].
SiegelMatrix random_tau_line(Rng& rng);

}  // namespace thetadiv
