#include "thetadiv/siegel.hpp"

#include <cmath>
#include <stdexcept>

namespace thetadiv {

SiegelMatrix::SiegelMatrix(const ComplexMatrix& tau, double sym_tol) {
    if (!tau.square()) throw std::invalid_argument("SiegelMatrix: tau must be square");
    n_ = static_cast<int>(tau.rows());
    const double scale = 1.0 + tau.max_abs();
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (std::abs(tau(i, j) - tau(j, i)) > sym_tol * scale)
                throw std::invalid_argument("SiegelMatrix: tau not symmetric");
    tau_ = ComplexMatrix(n_, n_);
    for (int i = 0; i < n_; ++i) {
        tau_(i, i) = tau(i, i);
        for (int j = i + 1; j < n_; ++j) {
            const Complex avg = 0.5 * (tau(i, j) + tau(j, i));
            tau_(i, j) = avg;
            tau_(j, i) = avg;
        }
    }

    // Cholesky of Im tau; every pivot must be strictly positive.
    chol_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = tau_(i, j).imag();
            for (int k = 0; k < j; ++k) s -= chol_[i * n_ + k] * chol_[j * n_ + k];
            if (i == j) {
                if (s <= 0.0)
                    throw std::invalid_argument("SiegelMatrix: Im tau not positive definite");
                chol_[i * n_ + j] = std::sqrt(s);
            } else {
                chol_[i * n_ + j] = s / chol_[j * n_ + j];
            }
        }
    }
}

RVec SiegelMatrix::solve_im(const RVec& y) const {
    if (static_cast<int>(y.size()) != n_) throw std::invalid_argument("solve_im: size mismatch");
    // L L^T x = y: forward then backward substitution.
    RVec x(y);
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < i; ++j) x[i] -= chol_[i * n_ + j] * x[j];
        x[i] /= chol_[i * n_ + i];
    }
    for (int i = n_; i-- > 0;) {
        for (int j = i + 1; j < n_; ++j) x[i] -= chol_[j * n_ + i] * x[j];
        x[i] /= chol_[i * n_ + i];
    }
    return x;
}

double SiegelMatrix::growth_exponent(const CVec& z) const {
    if (static_cast<int>(z.size()) != n_)
        throw std::invalid_argument("growth_exponent: size mismatch");
    RVec y(n_);
    for (int i = 0; i < n_; ++i) y[i] = z[i].imag();
    const RVec w = solve_im(y);
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += y[i] * w[i];
    return M_PI * s;
}

double SiegelMatrix::sqrt_det_im() const {
    double p = 1.0;
    for (int i = 0; i < n_; ++i) p *= chol_[i * n_ + i];
    return p;
}

double SiegelMatrix::inv_factor_norm() const {
    // U^{-1} = L^{-T}; compute L^{-1} by forward substitution on the identity
    // and take the Frobenius norm (invariant under transposition).
    std::vector<double> inv(static_cast<std::size_t>(n_) * n_, 0.0);
    for (int c = 0; c < n_; ++c) {
        inv[c * n_ + c] = 1.0;
        for (int i = c; i < n_; ++i) {
            double s = inv[i * n_ + c];
            for (int j = c; j < i; ++j) s -= chol_[i * n_ + j] * inv[j * n_ + c];
            inv[i * n_ + c] = s / chol_[i * n_ + i];
        }
    }
    double f = 0.0;
    for (double v : inv) f += v * v;
    return std::sqrt(f);
}

double SiegelMatrix::cell_half_diameter() const {
    // ||U u|| <= 1/2 sum_j ||column_j(U)|| for u in [-1/2,1/2]^n; the columns
    // of U are the rows of L.
    double s = 0.0;
    for (int i = 0; i < n_; ++i) {
        double r = 0.0;
        for (int j = 0; j <= i; ++j) r += chol_[i * n_ + j] * chol_[i * n_ + j];
        s += std::sqrt(r);
    }
    return 0.5 * s;
}

SiegelMatrix block_diag(const SiegelMatrix& t1, const SiegelMatrix& t2) {
    const int k = t1.n(), l = t2.n();
    ComplexMatrix m(k + l, k + l);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m(i, j) = t1(i, j);
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) m(k + i, k + j) = t2(i, j);
    return SiegelMatrix(m);
}

void lattice_coordinates(const CVec& z, const SiegelMatrix& tau, RVec& alpha, RVec& beta) {
    const int n = tau.n();
    if (static_cast<int>(z.size()) != n)
        throw std::invalid_argument("lattice_coordinates: size mismatch");
    RVec y(n);
    for (int i = 0; i < n; ++i) y[i] = z[i].imag();
    alpha = tau.solve_im(y);
    beta.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double s = z[i].real();
        for (int j = 0; j < n; ++j) s -= tau.re(i, j) * alpha[j];
        beta[i] = s;
    }
}

namespace {
// round-half-even, exposed in the default FP environment via nearbyint
long long round_even(double x) { return static_cast<long long>(std::nearbyint(x)); }
}  // namespace

CVec lattice_reduce(const CVec& z, const SiegelMatrix& tau, std::vector<long long>* u_out,
                    std::vector<long long>* v_out) {
    const int n = tau.n();
    RVec alpha, beta;
    lattice_coordinates(z, tau, alpha, beta);
    std::vector<long long> u(n), v(n);
    for (int i = 0; i < n; ++i) {
        u[i] = round_even(alpha[i]);
        v[i] = round_even(beta[i]);
    }
    CVec r(z);
    for (int i = 0; i < n; ++i) {
        Complex shift(static_cast<double>(v[i]), 0.0);
        for (int j = 0; j < n; ++j) shift += tau(i, j) * static_cast<double>(u[j]);
        r[i] -= shift;
    }
    if (u_out) *u_out = std::move(u);
    if (v_out) *v_out = std::move(v);
    return r;
}

double lattice_distance(const CVec& a, const CVec& b, const SiegelMatrix& tau) {
    return norm(lattice_reduce(sub(a, b), tau));
}

}  // namespace thetadiv
