#include "thetadiv/modular.hpp"

#include <cmath>
#include <stdexcept>

namespace thetadiv {

namespace {

using IVec = std::vector<long long>;

IVec imat_mul(int n, const IVec& x, const IVec& y) {
    IVec r(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const long long v = x[i * n + k];
            if (v == 0) continue;
            for (int j = 0; j < n; ++j) r[i * n + j] += v * y[k * n + j];
        }
    return r;
}

IVec imat_tmul(int n, const IVec& x, const IVec& y) {  // t(x) * y
    IVec r(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const long long v = x[k * n + i];
            if (v == 0) continue;
            for (int j = 0; j < n; ++j) r[i * n + j] += v * y[k * n + j];
        }
    return r;
}

IVec imat_add(const IVec& x, const IVec& y, long long sy) {
    IVec r(x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += sy * y[i];
    return r;
}

bool imat_symmetric(int n, const IVec& x) {
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (x[i * n + j] != x[j * n + i]) return false;
    return true;
}

bool imat_is_identity(int n, const IVec& x) {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (x[i * n + j] != (i == j ? 1 : 0)) return false;
    return true;
}

long long imat_det(int n, const IVec& x) {
    if (n == 1) return x[0];
    long long s = 0;
    long long sign = 1;
    for (int j = 0; j < n; ++j, sign = -sign) {
        IVec sub;
        sub.reserve(static_cast<std::size_t>(n - 1) * (n - 1));
        for (int r = 1; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (c != j) sub.push_back(x[r * n + c]);
        s += sign * x[j] * imat_det(n - 1, sub);
    }
    return s;
}

IVec imat_inverse_unimodular(int n, const IVec& u) {
    const long long d = imat_det(n, u);
    if (d != 1 && d != -1)
        throw std::invalid_argument("gl_embed: matrix is not unimodular");
    IVec inv(static_cast<std::size_t>(n) * n, 0);
    if (n == 1) {
        inv[0] = d;
        return inv;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            IVec sub;
            sub.reserve(static_cast<std::size_t>(n - 1) * (n - 1));
            for (int r = 0; r < n; ++r) {
                if (r == i) continue;
                for (int c = 0; c < n; ++c)
                    if (c != j) sub.push_back(u[r * n + c]);
            }
            const long long cof = (((i + j) % 2 == 0) ? 1 : -1) * imat_det(n - 1, sub);
            inv[j * n + i] = d * cof;  // adjugate over det, det = +-1
        }
    return inv;
}

ComplexMatrix to_complex(int n, const IVec& x) {
    ComplexMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Complex(static_cast<double>(x[i * n + j]), 0.0);
    return m;
}

constexpr double kPi = M_PI;

}  // namespace

SymplecticInteger::SymplecticInteger(int n, std::vector<long long> a, std::vector<long long> b,
                                     std::vector<long long> c, std::vector<long long> d)
    : n_(n), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    const std::size_t sz = static_cast<std::size_t>(n) * n;
    if (n < 1 || a_.size() != sz || b_.size() != sz || c_.size() != sz || d_.size() != sz)
        throw std::invalid_argument("SymplecticInteger: block size mismatch");
    if (!imat_symmetric(n_, imat_tmul(n_, a_, c_)) ||
        !imat_symmetric(n_, imat_tmul(n_, b_, d_)) ||
        !imat_is_identity(n_, imat_add(imat_tmul(n_, a_, d_), imat_tmul(n_, c_, b_), -1)))
        throw std::invalid_argument("SymplecticInteger: symplectic relations violated");
}

SymplecticInteger SymplecticInteger::identity(int n) {
    const std::size_t sz = static_cast<std::size_t>(n) * n;
    IVec a(sz, 0), b(sz, 0), c(sz, 0), d(sz, 0);
    for (int i = 0; i < n; ++i) a[i * n + i] = d[i * n + i] = 1;
    return SymplecticInteger(n, a, b, c, d);
}

SymplecticInteger SymplecticInteger::J(int n) {
    const std::size_t sz = static_cast<std::size_t>(n) * n;
    IVec a(sz, 0), b(sz, 0), c(sz, 0), d(sz, 0);
    for (int i = 0; i < n; ++i) {
        b[i * n + i] = -1;
        c[i * n + i] = 1;
    }
    return SymplecticInteger(n, a, b, c, d);
}

SymplecticInteger SymplecticInteger::shear_diag(int n, int j) {
    auto g = identity(n);
    g.b_[j * n + j] = 2;
    return SymplecticInteger(n, g.a_, g.b_, g.c_, g.d_);
}

SymplecticInteger SymplecticInteger::shear_offdiag(int n, int j, int k) {
    if (j == k) throw std::invalid_argument("shear_offdiag: indices must differ");
    auto g = identity(n);
    g.b_[j * n + k] = 1;
    g.b_[k * n + j] = 1;
    return SymplecticInteger(n, g.a_, g.b_, g.c_, g.d_);
}

SymplecticInteger SymplecticInteger::gl_embed(int n, const std::vector<long long>& u) {
    if (u.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("gl_embed: size mismatch");
    const IVec uinv = imat_inverse_unimodular(n, u);
    IVec a(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)  // a = t(u^{-1})
        for (int j = 0; j < n; ++j) a[i * n + j] = uinv[j * n + i];
    IVec zero(static_cast<std::size_t>(n) * n, 0);
    return SymplecticInteger(n, a, zero, zero, u);
}

SymplecticInteger SymplecticInteger::operator*(const SymplecticInteger& rhs) const {
    if (n_ != rhs.n_) throw std::invalid_argument("SymplecticInteger: dimension mismatch");
    const IVec a = imat_add(imat_mul(n_, a_, rhs.a_), imat_mul(n_, b_, rhs.c_), 1);
    const IVec b = imat_add(imat_mul(n_, a_, rhs.b_), imat_mul(n_, b_, rhs.d_), 1);
    const IVec c = imat_add(imat_mul(n_, c_, rhs.a_), imat_mul(n_, d_, rhs.c_), 1);
    const IVec d = imat_add(imat_mul(n_, c_, rhs.b_), imat_mul(n_, d_, rhs.d_), 1);
    return SymplecticInteger(n_, a, b, c, d);
}

ComplexMatrix SymplecticInteger::block_a() const { return to_complex(n_, a_); }
ComplexMatrix SymplecticInteger::block_b() const { return to_complex(n_, b_); }
ComplexMatrix SymplecticInteger::block_c() const { return to_complex(n_, c_); }
ComplexMatrix SymplecticInteger::block_d() const { return to_complex(n_, d_); }

bool gamma12_member(const SymplecticInteger& g) {
    const int n = g.n();
    for (int j = 0; j < n; ++j) {
        long long ac = 0, bd = 0;
        for (int k = 0; k < n; ++k) {
            ac += g.a(k, j) * g.c(k, j);
            bd += g.b(k, j) * g.d(k, j);
        }
        if (ac % 2 != 0 || bd % 2 != 0) return false;
    }
    return true;
}

namespace {

ComplexMatrix cp_matrix(const SymplecticInteger& g, const SiegelMatrix& tau) {
    ComplexMatrix cp = g.block_c() * tau.matrix() + g.block_d();
    // Reject numerically singular c tau + d before transforming.
    double nf = 0.0, ninv = 0.0;
    const ComplexMatrix inv = inverse(cp);
    for (std::size_t i = 0; i < cp.rows(); ++i)
        for (std::size_t j = 0; j < cp.cols(); ++j) {
            nf += std::norm(cp(i, j));
            ninv += std::norm(inv(i, j));
        }
    if (std::sqrt(nf * ninv) > 1e12)
        throw std::runtime_error("symplectic_act: c tau + d numerically singular");
    return cp;
}

}  // namespace

std::pair<CVec, SiegelMatrix> symplectic_act(const SymplecticInteger& gamma, const CVec& z,
                                             const SiegelMatrix& tau) {
    if (gamma.n() != tau.n()) throw std::invalid_argument("symplectic_act: dimension mismatch");
    const ComplexMatrix cp = cp_matrix(gamma, tau);
    const CVec z_new = solve(cp.transposed(), z);
    const ComplexMatrix num = gamma.block_a() * tau.matrix() + gamma.block_b();
    // (a tau + b)(c tau + d)^{-1} = (t(cp)^{-1} t(num))^T
    ComplexMatrix t_new = solve(cp.transposed(), num.transposed()).transposed();
    for (std::size_t i = 0; i < t_new.rows(); ++i)
        for (std::size_t j = i + 1; j < t_new.cols(); ++j) {
            const Complex avg = 0.5 * (t_new(i, j) + t_new(j, i));
            t_new(i, j) = avg;
            t_new(j, i) = avg;
        }
    return {z_new, SiegelMatrix(t_new)};
}

Complex period_factor_exponent(const CVec& z, const SiegelMatrix& tau,
                               const std::vector<long long>& u) {
    const int n = tau.n();
    if (static_cast<int>(z.size()) != n || static_cast<int>(u.size()) != n)
        throw std::invalid_argument("period_factor: dimension mismatch");
    Complex utu(0.0, 0.0), uz(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
        const double ui = static_cast<double>(u[i]);
        uz += ui * z[i];
        for (int j = 0; j < n; ++j) utu += ui * static_cast<double>(u[j]) * tau(i, j);
    }
    return Complex(0.0, -kPi) * utu + Complex(0.0, -2.0 * kPi) * uz;
}

Complex period_factor(const CVec& z, const SiegelMatrix& tau, const std::vector<long long>& u) {
    return std::exp(period_factor_exponent(z, tau, u));
}

Complex automorphy_q_exponent(const CVec& z, const SymplecticInteger& gamma,
                              const SiegelMatrix& tau) {
    if (gamma.n() != tau.n() || static_cast<int>(z.size()) != tau.n())
        throw std::invalid_argument("automorphy_q: dimension mismatch");
    const ComplexMatrix cp = cp_matrix(gamma, tau);
    const CVec cz = gamma.block_c().apply(z);
    const CVec w = solve(cp, cz);
    return Complex(0.0, kPi) * dot(z, w);
}

Complex automorphy_q(const CVec& z, const SymplecticInteger& gamma, const SiegelMatrix& tau) {
    return std::exp(automorphy_q_exponent(z, gamma, tau));
}

namespace {

AutomorphyReport make_report(const Complex& log_ratio) {
    AutomorphyReport r;
    r.ratio = std::exp(log_ratio);
    r.modulus_deviation = std::abs(std::abs(r.ratio) - 1.0);
    r.root8_deviation = std::abs(std::exp(8.0 * log_ratio) - Complex(1.0, 0.0));
    return r;
}

}  // namespace

std::optional<AutomorphyReport> verify_theta_modular(const SymplecticInteger& gamma, const CVec& z,
                                                     const SiegelMatrix& tau, double epsilon,
                                                     bool flip_branch) {
    if (!gamma12_member(gamma))
        throw std::invalid_argument("verify_theta_modular: gamma outside the congruence group");

    const ThetaEval lhs0 = theta_eval_scaled(z, tau, ThetaCharacteristic(tau.n()), epsilon);
    if (std::abs(lhs0.v.mantissa) < 1e-6) return std::nullopt;  // too close to the divisor

    const auto [z_new, tau_new] = symplectic_act(gamma, z, tau);
    const ThetaEval lhs1 = theta_eval_scaled(z_new, tau_new, ThetaCharacteristic(tau.n()), epsilon);
    if (std::abs(lhs1.v.mantissa) < 1e-12) return std::nullopt;

    const Complex det_cp = det(cp_matrix(gamma, tau));
    const Complex q_exp = automorphy_q_exponent(z, gamma, tau);
    Complex log_ratio = lhs1.v.log() - lhs0.v.log() - 0.5 * std::log(det_cp) - q_exp;
    if (flip_branch) log_ratio += Complex(0.0, kPi);
    return make_report(log_ratio);
}

std::optional<AutomorphyReport> verify_eta_modular(const SymplecticInteger& gamma,
                                                   const DivisorSample& point,
                                                   const SiegelMatrix& tau, double epsilon,
                                                   bool flip_branch) {
    if (!gamma12_member(gamma))
        throw std::invalid_argument("verify_eta_modular: gamma outside the congruence group");
    if (point.residual > 1e-9)
        throw std::invalid_argument("verify_eta_modular: point residual too large");
    const int n = tau.n();

    const ThetaJet jet = theta_jet(point.z, tau, epsilon);
    const EtaValue eta = eta_point(jet, point.z);
    if (std::abs(eta.v.mantissa) < 1e-6 * (1.0 + eta.mantissa_scale))
        return std::nullopt;  // ramification point: ratio unstable

    auto [z_new, tau_new] = symplectic_act(gamma, point.z, tau);
    // The transformed point lies on the transformed divisor exactly; polish
    // away the numerical drift and re-measure before trusting the ratio.
    ThetaJet jet_new = theta_jet(z_new, tau_new, epsilon);
    for (int it = 0; it < 2 && std::abs(jet_new.value) > 1e-10 * (1.0 + jet_new.scale_mag());
         ++it) {
        z_new = project_onto_divisor(z_new, tau_new, epsilon);
        jet_new = theta_jet(z_new, tau_new, epsilon);
    }
    if (std::abs(jet_new.value) > 1e-7 * (1.0 + jet_new.scale_mag())) return std::nullopt;

    const EtaValue eta_new = eta_point(jet_new, z_new);
    if (std::abs(eta_new.v.mantissa) < 1e-12 * (1.0 + eta_new.mantissa_scale)) return std::nullopt;

    const Complex det_cp = det(cp_matrix(gamma, tau));
    const Complex q_exp = automorphy_q_exponent(point.z, gamma, tau);
    Complex log_ratio = eta_new.v.log() - eta.v.log() -
                        0.5 * static_cast<double>(n + 5) * std::log(det_cp) -
                        static_cast<double>(n + 1) * q_exp;
    if (flip_branch && (n + 5) % 2 != 0) log_ratio += Complex(0.0, kPi);
    return make_report(log_ratio);
}

}  // namespace thetadiv
