#include "thetadiv/rng.hpp"

#include "thetadiv/identities.hpp"

#include <cmath>
#include <stdexcept>

namespace thetadiv {

std::uint64_t Rng::next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

long long Rng::uniform_int(long long lo, long long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long long>(next() % span);
}

Complex Rng::complex_box(double re_lo, double re_hi, double im_lo, double im_hi) {
    const double re = uniform(re_lo, re_hi);
    const double im = uniform(im_lo, im_hi);
    return Complex(re, im);
}

CVec Rng::complex_vector(int n, double w) {
    CVec v(static_cast<std::size_t>(n));
    for (auto& x : v) x = complex_box(-w, w, -w, w);
    return v;
}

CVec Rng::unit_direction(int n) {
    for (;;) {
        CVec v = complex_vector(n, 1.0);
        const double r = norm(v);
        if (r > 0.1) {
            for (auto& x : v) x /= r;
            return v;
        }
    }
}

std::vector<long long> Rng::int_vector(int n, long long lo, long long hi) {
    std::vector<long long> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = uniform_int(lo, hi);
    return v;
}

SiegelMatrix random_tau_near_i(int n, Rng& rng) {
    ComplexMatrix tau(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    std::vector<double> p(static_cast<std::size_t>(n) * n);
    for (auto& x : p) x = rng.uniform(-1.0, 1.0);
    // E = 0.2 P P^T / max(1, ||P P^T||_F)
    std::vector<double> e(static_cast<std::size_t>(n) * n, 0.0);
    double fro = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += p[i * n + k] * p[j * n + k];
            e[i * n + j] = s;
            fro += s * s;
        }
    const double denom = std::max(1.0, std::sqrt(fro));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double s_entry = rng.uniform(-0.3, 0.3);
            const double im = (i == j ? 1.0 : 0.0) + 0.2 * e[i * n + j] / denom;
            tau(i, j) = Complex(s_entry, im);
            tau(j, i) = tau(i, j);
        }
    return SiegelMatrix(tau);
}

SiegelMatrix random_tau_indecomposable(Rng& rng, double epsilon) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        SiegelMatrix tau = random_tau_near_i(2, rng);
        if (indecomposable(tau, epsilon)) return tau;
    }
    throw std::runtime_error("random_tau_indecomposable: sampler exhausted");
}

SiegelMatrix random_tau_line(Rng& rng) {
    ComplexMatrix t(1, 1);
    t(0, 0) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(0.5, 3.0));
    return SiegelMatrix(t);
}

}  // namespace thetadiv
