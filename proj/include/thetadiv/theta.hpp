#pragma once
// Evaluation of the Riemann theta function
//
//     theta[a;b](z, tau) = sum_{m in Z^n} e( (m+a)^T tau (m+a)/2 + (m+a).(z+b) ),
//     e(x) = exp(2 pi i x),
//
// together with its z-derivatives, by truncated lattice summation (see DLMF
// chapter 21 for the classical background). Terms are summed over an
// ellipsoid ||U(m - c)|| <= R around the real center c = -(Im tau)^{-1} Im z
// - a, where U^T U = Im tau, and R is chosen so that an integral-comparison
// bound on the omitted Gaussian tail, with the polynomial weight |2 pi m|^d
// for derivative order d, stays below the requested epsilon.
//
// Every term carries the common growth factor exp(pi y^T (Im tau)^{-1} y),
// y = Im z. Values are therefore returned in scaled form as
// mantissa * exp(log_scale): the mantissa is a sum of terms of modulus <= 1
// and is accurate to epsilon absolutely, which keeps downstream residual
// checks meaningful even when the raw value is astronomically large. For
// derivative orders >= 1 the stated bound assumes the imaginary part of z is
// lattice-reduced (callers evaluate jets at reduced points).

#include "thetadiv/characteristic.hpp"
#include "thetadiv/siegel.hpp"

#include <cstddef>
#include <cstdint>

namespace thetadiv {

// Smallest supported target accuracy; double precision cannot honor less.
inline constexpr double kEpsilonFloor = 1e-13;
inline constexpr int kMaxDimension = 6;

struct TruncationSpec {
    double epsilon = 0.0;  // target absolute error of the scaled sum
    double radius = 0.0;   // ellipsoid radius R
    std::vector<long long> shift;  // integer recentering, filled per evaluation
};

// Solves the tail inequality for the given dimension and derivative order.
// Throws std::domain_error for epsilon below the supported floor, derivative
// order outside 0..4, or dimension > 6.
TruncationSpec truncation_radius(const SiegelMatrix& tau, double epsilon, int deriv_order);

struct ScaledComplex {
    Complex mantissa{0.0, 0.0};
    double log_scale = 0.0;

    Complex value() const;   // mantissa * exp(log_scale); may overflow
    double abs() const;      // |mantissa| * exp(log_scale)
    Complex log() const;     // principal log(mantissa) + log_scale
};

struct ThetaEval {
    ScaledComplex v;
    double mantissa_error = 0.0;  // tail bound at mantissa level
    std::size_t terms = 0;
    TruncationSpec trunc;
};

ThetaEval theta_eval_scaled(const CVec& z, const SiegelMatrix& tau,
                            const ThetaCharacteristic& chr, double epsilon);
Complex theta_eval(const CVec& z, const SiegelMatrix& tau, const ThetaCharacteristic& chr,
                   double epsilon);
Complex theta_eval(const CVec& z, const SiegelMatrix& tau, double epsilon);

// Value, gradient and hessian of theta (zero characteristic), all scaled by
// exp(-log_scale). The hessian is exactly symmetric: each unordered pair is
// accumulated once and mirrored.
struct ThetaJet {
    int n = 0;
    double log_scale = 0.0;
    Complex value{0.0, 0.0};
    CVec gradient;
    ComplexMatrix hessian;
    double mantissa_error = 0.0;
    std::size_t terms = 0;

    Complex value_raw() const;
    CVec gradient_raw() const;
    ComplexMatrix hessian_raw() const;
    // Largest mantissa magnitude across value, gradient and hessian.
    double scale_mag() const;
};

ThetaJet theta_jet(const CVec& z, const SiegelMatrix& tau, double epsilon);

// order-th derivative of t -> theta(z + t v) at t = 0, order in 0..4.
ScaledComplex directional_derivative_scaled(const CVec& z, const SiegelMatrix& tau, const CVec& v,
                                            int order, double epsilon);
Complex directional_derivative(const CVec& z, const SiegelMatrix& tau, const CVec& v, int order,
                               double epsilon);

}  // namespace thetadiv
