#include "thetadiv/divisor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thetadiv {

namespace {

// Tangent data from a jet whose gradient is clear of zero: kernel basis of
// the gradient covector, built against the largest gradient coordinate.
void fill_tangent(DivisorSample& s, const ThetaJet& jet) {
    const int n = jet.n;
    s.gradient_norm = norm(jet.gradient);
    s.jet_scale = jet.scale_mag();
    s.tangent_basis.clear();
    s.tangent.clear();
    if (n == 1) return;
    int pivot = 0;
    for (int j = 1; j < n; ++j)
        if (std::abs(jet.gradient[j]) > std::abs(jet.gradient[pivot])) pivot = j;
    for (int k = 0; k < n; ++k) {
        if (k == pivot) continue;
        CVec v(static_cast<std::size_t>(n), Complex(0.0, 0.0));
        v[k] = Complex(1.0, 0.0);
        v[pivot] = -jet.gradient[k] / jet.gradient[pivot];
        const double vn = norm(v);
        for (auto& x : v) x /= vn;
        s.tangent_basis.push_back(std::move(v));
    }
    s.tangent = s.tangent_basis.front();
}

std::optional<DivisorSample> finish_sample(CVec z, const SiegelMatrix& tau, double epsilon,
                                           const DivisorSolveOptions& opts) {
    z = lattice_reduce(z, tau);
    // Polish with full-dimensional Newton projection steps until the scaled
    // residual stops improving.
    ThetaJet jet = theta_jet(z, tau, epsilon);
    for (int it = 0; it < 4; ++it) {
        const double g2 = norm2(jet.gradient);
        if (g2 <= 0.0) break;
        const double before = std::abs(jet.value);
        if (before < 1e-15 * (1.0 + jet.scale_mag())) break;
        CVec step(z.size());
        for (std::size_t i = 0; i < z.size(); ++i)
            step[i] = jet.value * std::conj(jet.gradient[i]) / g2;
        CVec z_next = sub(z, step);
        ThetaJet jet_next = theta_jet(z_next, tau, epsilon);
        if (std::abs(jet_next.value) >= before) break;
        z = std::move(z_next);
        jet = std::move(jet_next);
    }

    DivisorSample s;
    s.z = z;
    s.residual = std::abs(jet.value) * std::exp(jet.log_scale);
    if (s.residual > opts.residual_tol) return std::nullopt;
    fill_tangent(s, jet);
    if (!(s.gradient_norm > opts.smooth_threshold * s.jet_scale)) return std::nullopt;
    return s;
}

}  // namespace

DivisorSample divisor_solve(const SiegelMatrix& tau, const CVec& anchor, const CVec& direction,
                            double epsilon, const DivisorSolveOptions& opts) {
    const int n = tau.n();
    if (static_cast<int>(anchor.size()) != n || static_cast<int>(direction.size()) != n)
        throw std::invalid_argument("divisor_solve: dimension mismatch");
    if (norm(direction) == 0.0) throw std::invalid_argument("divisor_solve: zero direction");

    // Fixed 5x5 multi-start grid over [-2,2]^2, nearest starts first (ties
    // broken lexicographically), so the returned root is deterministic. The
    // fixed offset keeps starts off the symmetry axes of the even function,
    // where Newton would stay trapped.
    std::vector<Complex> starts;
    for (int re = -2; re <= 2; ++re)
        for (int im = -2; im <= 2; ++im) starts.emplace_back(re + 0.1371, im + 0.2431);
    std::stable_sort(starts.begin(), starts.end(), [](const Complex& a, const Complex& b) {
        return std::norm(a) < std::norm(b);
    });

    for (const Complex& t0 : starts) {
        Complex t = t0;
        for (int it = 0; it < opts.max_iters; ++it) {
            CVec z(anchor);
            for (int i = 0; i < n; ++i) z[i] += t * direction[i];
            const ThetaJet jet = theta_jet(z, tau, epsilon);
            const double scale = 1.0 + jet.scale_mag();
            if (std::abs(jet.value) <= opts.theta_tol * scale) {
                if (auto s = finish_sample(z, tau, epsilon, opts)) return *s;
                break;  // converged but singular or unpolishable: next start
            }
            const Complex deriv = dot(jet.gradient, direction);
            if (std::abs(deriv) <= 1e-14 * scale) break;
            t -= jet.value / deriv;
            if (std::abs(t) > 6.0) break;
        }
    }
    throw std::runtime_error("divisor_solve: no convergence from any start");
}

std::optional<DivisorSample> divisor_sample_at(const CVec& z, const SiegelMatrix& tau,
                                               double epsilon, const DivisorSolveOptions& opts) {
    return finish_sample(z, tau, epsilon, opts);
}

CVec half_period(const SiegelMatrix& tau, const ThetaCharacteristic& chr) {
    const int n = tau.n();
    if (chr.n() != n) throw std::invalid_argument("half_period: dimension mismatch");
    CVec z(static_cast<std::size_t>(n), Complex(0.0, 0.0));
    for (int i = 0; i < n; ++i) {
        Complex v(chr.b(i), 0.0);
        for (int j = 0; j < n; ++j) v += tau(i, j) * chr.a(j);
        z[i] = v;
    }
    return z;
}

CVec project_onto_divisor(const CVec& z, const SiegelMatrix& tau, double epsilon, int steps) {
    CVec w(z);
    for (int it = 0; it < steps; ++it) {
        const ThetaJet jet = theta_jet(w, tau, epsilon);
        const double g2 = norm2(jet.gradient);
        if (g2 <= 1e-20 * jet.scale_mag() * jet.scale_mag())
            throw std::runtime_error("project_onto_divisor: degenerate gradient");
        for (std::size_t i = 0; i < w.size(); ++i)
            w[i] -= jet.value * std::conj(jet.gradient[i]) / g2;
    }
    return w;
}

CVec gauss_map(const DivisorSample& sample, const SiegelMatrix& tau, double epsilon) {
    const ThetaJet jet = theta_jet(sample.z, tau, epsilon);
    const int n = jet.n;
    if (n < 2) throw std::invalid_argument("gauss_map: needs n >= 2");
    if (!(norm(jet.gradient) > 1e-6 * jet.scale_mag()))
        throw std::runtime_error("gauss_map: singular sample rejected");
    int pivot = 0;
    for (int j = 1; j < n; ++j)
        if (std::abs(jet.gradient[j]) > std::abs(jet.gradient[pivot])) pivot = j;
    CVec w(jet.gradient);
    const Complex p = w[pivot];
    for (auto& x : w) x /= p;
    return w;
}

namespace {

// Affine coordinates of the Gauss map at z in the chart of the given pivot:
// gradient entries divided by the pivot entry, pivot dropped.
CVec gauss_affine(const CVec& z, const SiegelMatrix& tau, int pivot, double epsilon) {
    const ThetaJet jet = theta_jet(z, tau, epsilon);
    if (!(norm(jet.gradient) > 1e-8 * jet.scale_mag()))
        throw std::runtime_error("gauss_ramification: gradient degenerated along the divisor");
    CVec w;
    for (int j = 0; j < jet.n; ++j)
        if (j != pivot) w.push_back(jet.gradient[j] / jet.gradient[pivot]);
    return w;
}

ComplexMatrix gauss_differential(const DivisorSample& sample, const SiegelMatrix& tau, int pivot,
                                 double step, double epsilon) {
    const int n = tau.n();
    ComplexMatrix d(static_cast<std::size_t>(n - 1), static_cast<std::size_t>(n - 1));
    for (std::size_t k = 0; k < sample.tangent_basis.size(); ++k) {
        const CVec& t = sample.tangent_basis[k];
        CVec zp(sample.z), zm(sample.z);
        for (int i = 0; i < n; ++i) {
            zp[i] += step * t[i];
            zm[i] -= step * t[i];
        }
        zp = project_onto_divisor(zp, tau, epsilon);
        zm = project_onto_divisor(zm, tau, epsilon);
        const CVec gp = gauss_affine(zp, tau, pivot, epsilon);
        const CVec gm = gauss_affine(zm, tau, pivot, epsilon);
        for (std::size_t r = 0; r < gp.size(); ++r)
            d(r, k) = (gp[r] - gm[r]) / (2.0 * step);
    }
    return d;
}

}  // namespace

RamificationResidual gauss_ramification_residual(const DivisorSample& sample,
                                                 const SiegelMatrix& tau, double step,
                                                 double epsilon) {
    const int n = tau.n();
    if (n != 2 && n != 3)
        throw std::invalid_argument("gauss_ramification_residual: n must be 2 or 3");
    if (sample.tangent_basis.empty())
        throw std::invalid_argument("gauss_ramification_residual: sample has no tangent data");

    const ThetaJet jet = theta_jet(sample.z, tau, epsilon);
    int pivot = 0;
    for (int j = 1; j < n; ++j)
        if (std::abs(jet.gradient[j]) > std::abs(jet.gradient[pivot])) pivot = j;

    const ComplexMatrix d_h = gauss_differential(sample, tau, pivot, step, epsilon);
    const ComplexMatrix d_h2 = gauss_differential(sample, tau, pivot, 0.5 * step, epsilon);
    // Richardson: central differences have O(step^2) error.
    const ComplexMatrix d = (d_h2 * Complex(4.0 / 3.0, 0.0)) - (d_h * Complex(1.0 / 3.0, 0.0));

    RamificationResidual r;
    const EtaValue e = eta_point(jet, sample.z);
    r.eta_abs = std::abs(e.v.mantissa);
    r.eta_scale = e.mantissa_scale;
    r.dgamma_det_abs = std::abs(det(d));
    return r;
}

}  // namespace thetadiv
