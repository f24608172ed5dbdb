#include "thetadiv/eta.hpp"

#include <cmath>
#include <stdexcept>

namespace thetadiv {

namespace {

Complex det_expansion(const ComplexMatrix& h) {
    const std::size_t n = h.rows();
    if (n == 1) return h(0, 0);
    if (n == 2) return h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0);
    if (n == 3)
        return h(0, 0) * (h(1, 1) * h(2, 2) - h(1, 2) * h(2, 1)) -
               h(0, 1) * (h(1, 0) * h(2, 2) - h(1, 2) * h(2, 0)) +
               h(0, 2) * (h(1, 0) * h(2, 1) - h(1, 1) * h(2, 0));
    Complex s(0.0, 0.0);
    double sign = 1.0;
    for (std::size_t j = 0; j < n; ++j, sign = -sign)
        s += sign * h(0, j) * det_expansion(h.minor_matrix(0, j));
    return s;
}

Complex minor_det(const ComplexMatrix& h, std::size_t i, std::size_t j) {
    const ComplexMatrix sub = h.minor_matrix(i, j);
    if (sub.rows() <= 3) return det_expansion(sub);
    return det(sub);
}

}  // namespace

ComplexMatrix cofactor(const ComplexMatrix& h) {
    if (!h.square()) throw std::invalid_argument("cofactor: matrix not square");
    const std::size_t m = h.rows();
    if (m > 8) throw std::invalid_argument("cofactor: size > 8 not supported");
    if (m == 1) {
        ComplexMatrix one(1, 1);
        one(0, 0) = Complex(1.0, 0.0);
        return one;
    }
    ComplexMatrix c(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            c(i, j) = sign * minor_det(h, i, j);
        }
    return c;
}

Complex eta_bilinear(const CVec& gl, const CVec& gr, const ComplexMatrix& h) {
    if (!h.square() || gl.size() != h.rows() || gr.size() != h.rows())
        throw std::invalid_argument("eta_bilinear: dimension mismatch");
    const ComplexMatrix c = cofactor(h);
    Complex s(0.0, 0.0);
    for (std::size_t k = 0; k < h.rows(); ++k)
        for (std::size_t l = 0; l < h.rows(); ++l) s += gl[k] * c(k, l) * gr[l];
    return s;
}

Complex eta_form(const CVec& g, const ComplexMatrix& h) { return eta_bilinear(g, g, h); }

double eta_form_scale(const CVec& g, const ComplexMatrix& h) {
    const ComplexMatrix c = cofactor(h);
    double s = 0.0;
    for (std::size_t k = 0; k < h.rows(); ++k)
        for (std::size_t l = 0; l < h.rows(); ++l)
            s += std::abs(g[k]) * std::abs(g[l]) * std::abs(c(k, l));
    return s;
}

double eta_recursion_residual(const CVec& g, const ComplexMatrix& h, double* scale_out) {
    if (!h.square() || g.size() != h.rows())
        throw std::invalid_argument("eta_recursion_residual: dimension mismatch");
    const std::size_t m = h.rows();
    if (m < 2) throw std::invalid_argument("eta_recursion_residual: size must be >= 2");

    const Complex lhs = static_cast<double>(m - 1) * eta_form(g, h);
    Complex rhs(0.0, 0.0);
    double mass = std::abs(lhs);
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) {
            CVec gl, gr;
            gl.reserve(m - 1);
            gr.reserve(m - 1);
            for (std::size_t i = 0; i < m; ++i) {
                if (i != k) gl.push_back(g[i]);
                if (i != l) gr.push_back(g[i]);
            }
            const double sign = ((k + l) % 2 == 0) ? 1.0 : -1.0;
            const Complex term = sign * h(k, l) * eta_bilinear(gl, gr, h.minor_matrix(k, l));
            rhs += term;
            mass += std::abs(term);
        }
    if (scale_out) *scale_out = mass;
    return std::abs(lhs - rhs);
}

EtaValue eta_point(const ThetaJet& jet, const CVec& z) {
    EtaValue e;
    e.v.mantissa = eta_form(jet.gradient, jet.hessian);
    e.v.log_scale = static_cast<double>(jet.n + 1) * jet.log_scale;
    e.at = z;
    e.divisor_residual = std::abs(jet.value) * std::exp(jet.log_scale);
    e.mantissa_scale = eta_form_scale(jet.gradient, jet.hessian);
    return e;
}

EtaValue eta_point(const CVec& z, const SiegelMatrix& tau, double epsilon) {
    return eta_point(theta_jet(z, tau, epsilon), z);
}

SiegelMatrix decomposable_tau(const SiegelMatrix& tau1, const SiegelMatrix& tau2) {
    return block_diag(tau1, tau2);
}

}  // namespace thetadiv
