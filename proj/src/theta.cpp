#include "thetadiv/theta.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thetadiv {

namespace {

constexpr double kPi = M_PI;

// int_R^inf s^k e^{-pi s^2} ds.
double gaussian_tail_moment(int k, double R) {
    const double e = std::exp(-kPi * R * R);
    if (k == 0) return 0.5 * std::erfc(std::sqrt(kPi) * R);
    if (k == 1) return e / (2.0 * kPi);
    return (k - 1) / (2.0 * kPi) * gaussian_tail_moment(k - 2, R) +
           std::pow(R, k - 1) * e / (2.0 * kPi);
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// Upper bound for sum_{||U(m-c)|| > R} |2 pi m'|^d exp(-pi ||U(m-c)||^2),
// taken over the shifted lattice, via comparison with the radial integral.
// Each lattice point owns a cell of volume V and half-diameter h; sigma
// bounds ||U^{-1}||, and |m'| <= sigma r + kappa inside the shell of radius
// r for lattice-reduced arguments.
double tail_bound(double R, int n, int d, double sigma, double kappa, double h, double V) {
    const double omega = 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
    const double amp = omega / V * std::pow(2.0 * kPi, d);
    const double g_at_R = std::pow(sigma * R + kappa, d) * std::exp(-kPi * R * R);
    const double lo = std::max(R - h, 0.0);
    const double shell = g_at_R * (std::pow(R + h, n) - std::pow(lo, n)) / n;
    double integral = 0.0;
    for (int j = 0; j <= d; ++j) {
        const double cj = binom(d, j) * std::pow(sigma, j) * std::pow(kappa, d - j);
        for (int i = 0; i <= n - 1; ++i) {
            const double ci = binom(n - 1, i) * std::pow(h, n - 1 - i);
            integral += cj * ci * gaussian_tail_moment(i + j, R);
        }
    }
    return amp * (shell + integral);
}

}  // namespace

TruncationSpec truncation_radius(const SiegelMatrix& tau, double epsilon, int deriv_order) {
    if (!(epsilon > 0.0)) throw std::domain_error("truncation_radius: epsilon must be positive");
    if (epsilon < kEpsilonFloor)
        throw std::domain_error("truncation_radius: epsilon below supported floor 1e-13");
    if (deriv_order < 0 || deriv_order > 4)
        throw std::domain_error("truncation_radius: derivative order must be in 0..4");
    const int n = tau.n();
    if (n > kMaxDimension)
        throw std::domain_error("truncation_radius: dimension > 6 not supported");

    const double V = tau.sqrt_det_im();
    const double sigma = tau.inv_factor_norm();
    const double h = tau.cell_half_diameter();
    const double kappa = 2.0 * std::sqrt(static_cast<double>(n));

    double lo = 1.0, hi = 1.0;
    while (tail_bound(hi, n, deriv_order, sigma, kappa, h, V) > epsilon) {
        lo = hi;
        hi *= 1.5;
        if (hi > 64.0)
            throw std::runtime_error("truncation_radius: tail bound does not close");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-6; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (tail_bound(mid, n, deriv_order, sigma, kappa, h, V) <= epsilon)
            hi = mid;
        else
            lo = mid;
    }
    TruncationSpec spec;
    spec.epsilon = epsilon;
    spec.radius = hi;
    spec.shift.assign(static_cast<std::size_t>(n), 0);
    return spec;
}

Complex ScaledComplex::value() const { return mantissa * std::exp(log_scale); }

double ScaledComplex::abs() const { return std::abs(mantissa) * std::exp(log_scale); }

Complex ScaledComplex::log() const {
    return std::log(mantissa) + Complex(log_scale, 0.0);
}

namespace {

struct EvalSetup {
    int n = 0;
    double log_scale = 0.0;
    double center[kMaxDimension] = {};   // enumeration center -Y^{-1}y - a
    double xpb[kMaxDimension] = {};      // Re z + b
    double chr_a[kMaxDimension] = {};
    double X[kMaxDimension][kMaxDimension] = {};
    double U[kMaxDimension][kMaxDimension] = {};  // upper factor, U^T U = Im tau
    double radius = 0.0;                 // enumeration radius around the integer shift
    std::vector<long long> shift;
};

EvalSetup make_setup(const CVec& z, const SiegelMatrix& tau, const ThetaCharacteristic& chr,
                     double radius) {
    const int n = tau.n();
    if (static_cast<int>(z.size()) != n) throw std::invalid_argument("theta: z has wrong dimension");
    if (chr.n() != n) throw std::invalid_argument("theta: characteristic has wrong dimension");

    EvalSetup s;
    s.n = n;
    RVec y(n);
    for (int i = 0; i < n; ++i) y[i] = z[i].imag();
    const RVec alpha = tau.solve_im(y);
    double g = 0.0;
    for (int i = 0; i < n; ++i) g += y[i] * alpha[i];
    s.log_scale = kPi * g;

    s.shift.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        s.chr_a[i] = chr.a(i);
        s.center[i] = -alpha[i] - s.chr_a[i];
        s.shift[i] = static_cast<long long>(std::nearbyint(s.center[i]));
        s.xpb[i] = z[i].real() + chr.b(i);
        for (int j = 0; j < n; ++j) s.X[i][j] = tau.re(i, j);
        for (int j = i; j < n; ++j) s.U[i][j] = tau.chol(j, i);
    }

    // Offset between the exact center and the integer recentering, measured
    // in the ellipsoid metric; enlarging the radius by it keeps the tail
    // bound valid for the integer-centered sum.
    double rho2 = 0.0;
    for (int i = 0; i < n; ++i) {
        double t = 0.0;
        for (int j = i; j < n; ++j)
            t += s.U[i][j] * (s.center[j] - static_cast<double>(s.shift[j]));
        rho2 += t * t;
    }
    s.radius = radius + std::sqrt(rho2);
    return s;
}

// Visits every integer point m with ||U(m - shift)|| <= radius in ascending
// lexicographic order of (m_{n-1}, ..., m_0); the summation order is fixed so
// results are reproducible bit for bit.
template <typename Visit>
void enumerate_lattice(const EvalSetup& s, Visit&& visit) {
    const int n = s.n;
    const double r2 = s.radius * s.radius * (1.0 + 1e-12) + 1e-12;
    long long m[kMaxDimension] = {};

    auto rec = [&](auto&& self, int i, double used) -> void {
        double off = 0.0;
        for (int j = i + 1; j < n; ++j)
            off += s.U[i][j] * static_cast<double>(m[j] - s.shift[j]);
        const double budget = r2 - used;
        if (budget < 0.0) return;
        const double halfwidth = std::sqrt(budget);
        const double lo = static_cast<double>(s.shift[i]) + (-halfwidth - off) / s.U[i][i];
        const double hi = static_cast<double>(s.shift[i]) + (halfwidth - off) / s.U[i][i];
        const long long mlo = static_cast<long long>(std::ceil(lo));
        const long long mhi = static_cast<long long>(std::floor(hi));
        for (long long mi = mlo; mi <= mhi; ++mi) {
            const double t = s.U[i][i] * static_cast<double>(mi - s.shift[i]) + off;
            const double q = used + t * t;
            if (q > r2) continue;
            m[i] = mi;
            if (i == 0)
                visit(m);
            else
                self(self, i - 1, q);
        }
    };
    rec(rec, n - 1, 0.0);
}

// Scaled term value exp(-pi ||U(m - c)||^2 + i phi(m)); the quadratic form is
// evaluated against the exact center so every term has modulus <= 1.
Complex term_value(const EvalSetup& s, const long long* m) {
    const int n = s.n;
    double q = 0.0;
    for (int i = 0; i < n; ++i) {
        double t = 0.0;
        for (int j = i; j < n; ++j)
            t += s.U[i][j] * (static_cast<double>(m[j]) - s.center[j]);
        q += t * t;
    }
    double phase = 0.0;
    for (int i = 0; i < n; ++i) {
        const double mi = static_cast<double>(m[i]) + s.chr_a[i];
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += s.X[i][j] * (static_cast<double>(m[j]) + s.chr_a[j]);
        phase += mi * (row + 2.0 * s.xpb[i]);
    }
    return std::exp(Complex(-kPi * q, kPi * phase));
}

}  // namespace

ThetaEval theta_eval_scaled(const CVec& z, const SiegelMatrix& tau, const ThetaCharacteristic& chr,
                            double epsilon) {
    TruncationSpec spec = truncation_radius(tau, epsilon, 0);
    EvalSetup s = make_setup(z, tau, chr, spec.radius);
    spec.shift = s.shift;

    Complex acc(0.0, 0.0);
    std::size_t count = 0;
    enumerate_lattice(s, [&](const long long* m) {
        acc += term_value(s, m);
        ++count;
    });

    ThetaEval out;
    out.v = ScaledComplex{acc, s.log_scale};
    out.mantissa_error = epsilon;
    out.terms = count;
    out.trunc = std::move(spec);
    return out;
}

Complex theta_eval(const CVec& z, const SiegelMatrix& tau, const ThetaCharacteristic& chr,
                   double epsilon) {
    return theta_eval_scaled(z, tau, chr, epsilon).v.value();
}

Complex theta_eval(const CVec& z, const SiegelMatrix& tau, double epsilon) {
    return theta_eval(z, tau, ThetaCharacteristic(tau.n()), epsilon);
}

Complex ThetaJet::value_raw() const { return value * std::exp(log_scale); }

CVec ThetaJet::gradient_raw() const {
    CVec g(gradient);
    const double e = std::exp(log_scale);
    for (auto& x : g) x *= e;
    return g;
}

ComplexMatrix ThetaJet::hessian_raw() const {
    return hessian * Complex(std::exp(log_scale), 0.0);
}

double ThetaJet::scale_mag() const {
    double m = std::abs(value);
    for (const auto& g : gradient) m = std::max(m, std::abs(g));
    m = std::max(m, hessian.max_abs());
    return m;
}

ThetaJet theta_jet(const CVec& z, const SiegelMatrix& tau, double epsilon) {
    const TruncationSpec spec = truncation_radius(tau, epsilon, 2);
    const ThetaCharacteristic zero(tau.n());
    EvalSetup s = make_setup(z, tau, zero, spec.radius);
    const int n = s.n;

    ThetaJet jet;
    jet.n = n;
    jet.log_scale = s.log_scale;
    jet.gradient.assign(static_cast<std::size_t>(n), Complex(0.0, 0.0));
    jet.hessian = ComplexMatrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    jet.mantissa_error = epsilon;

    const double two_pi = 2.0 * kPi;
    enumerate_lattice(s, [&](const long long* m) {
        const Complex t = term_value(s, m);
        jet.value += t;
        for (int j = 0; j < n; ++j) {
            const double mj = static_cast<double>(m[j]);
            jet.gradient[j] += Complex(0.0, two_pi * mj) * t;
            for (int k = j; k < n; ++k)
                jet.hessian(j, k) += (-two_pi * two_pi * mj * static_cast<double>(m[k])) * t;
        }
        ++jet.terms;
    });
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) jet.hessian(k, j) = jet.hessian(j, k);
    return jet;
}

ScaledComplex directional_derivative_scaled(const CVec& z, const SiegelMatrix& tau, const CVec& v,
                                            int order, double epsilon) {
    if (order < 0 || order > 4)
        throw std::domain_error("directional_derivative: order must be in 0..4");
    const double vnorm = norm(v);
    if (vnorm == 0.0) {
        if (order == 0) return theta_eval_scaled(z, tau, ThetaCharacteristic(tau.n()), epsilon).v;
        return ScaledComplex{Complex(0.0, 0.0), 0.0};
    }
    CVec vhat = scale(Complex(1.0 / vnorm, 0.0), v);

    const TruncationSpec spec = truncation_radius(tau, epsilon, order);
    EvalSetup s = make_setup(z, tau, ThetaCharacteristic(tau.n()), spec.radius);
    const int n = s.n;

    Complex acc(0.0, 0.0);
    const Complex two_pi_i(0.0, 2.0 * kPi);
    enumerate_lattice(s, [&](const long long* m) {
        const Complex t = term_value(s, m);
        Complex w(0.0, 0.0);
        for (int j = 0; j < n; ++j) w += static_cast<double>(m[j]) * vhat[j];
        Complex f(1.0, 0.0);
        const Complex base = two_pi_i * w;
        for (int k = 0; k < order; ++k) f *= base;
        acc += f * t;
    });
    return ScaledComplex{acc * std::pow(vnorm, order), s.log_scale};
}

Complex directional_derivative(const CVec& z, const SiegelMatrix& tau, const CVec& v, int order,
                               double epsilon) {
    return directional_derivative_scaled(z, tau, v, order, epsilon).value();
}

}  // namespace thetadiv
