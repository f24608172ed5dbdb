#pragma once
// Closed-form identities in low genus: Jacobi's derivative formula on the
// line, and on an indecomposable abelian surface the chart expressions of
// the Wronskian differential and of the quadratic form F along the divisor,
// the six Weierstrass points, the product of the squared even theta
// constants, and the cubed-eta product formula.

#include "thetadiv/divisor.hpp"

#include <optional>

namespace thetadiv {

// |LHS - RHS| / (1 + |RHS|) for
//   exp(pi i tau / 4) theta'((1+tau)/2) = pi i theta[0;0](0) theta[0;1/2](0) theta[1/2;0](0)
// on a 1x1 tau.
double jacobi_derivative_residual(const SiegelMatrix& tau, double epsilon);

// A chart scalar along the divisor of an abelian surface. chart is the index
// of the largest gradient component; it appears in denominators, and the
// complementary coordinate serves as the local coordinate.
struct ChartValue {
    int chart = 0;
    Complex value{0.0, 0.0};
    CVec at;
};

// Wronskian chart scalar -eta / theta_chart^3, carried by the cube of the
// local coordinate differential. Throws std::runtime_error when both
// gradient entries are below threshold (Weierstrass point).
ChartValue wronskian_value(const DivisorSample& sample, const SiegelMatrix& tau, double epsilon);
// Same value computed in a forced chart; for covariance cross-checks.
ChartValue wronskian_value_in_chart(const DivisorSample& sample, const SiegelMatrix& tau,
                                    int chart, double epsilon);

struct FValue {
    ChartValue f;          // tangent^T Hess tangent in the chart frame
    double pq_residual;    // scaled gap between the jet route and the
                           // directional-sum route for the same form
    double eta_residual;   // scaled gap against eta / theta_chart^2
};

FValue F_value(const DivisorSample& sample, const SiegelMatrix& tau, double epsilon);

// |w^2 eta - F^3| / (1 + |F^3|) in a single chart, with the Wronskian from
// the eta route and F from the hessian route.
double remark_identity_residual(const DivisorSample& sample, const SiegelMatrix& tau,
                                double epsilon);

// Declares tau (2x2) decomposable when the smallest even theta constant
// modulus drops below 1e-8 times the largest.
bool indecomposable(const SiegelMatrix& tau, double epsilon);

// The six odd half-periods tau a + b of an indecomposable 2x2 tau. Throws
// std::domain_error on decomposable input.
std::vector<CVec> weierstrass_points(const SiegelMatrix& tau, double epsilon);

// Product over the ten even characteristics of theta[e](0, tau)^2.
Complex even_nullwerte_product(const SiegelMatrix& tau, double epsilon);

struct ProductFormulaResult {
    Complex ratio{0.0, 0.0};  // eta^3 / (pi^12 prod theta[e](0)^2 theta(3z))
    int sign = 0;             // nearest of +-1
    double residual = 0.0;    // |ratio - sign|
};

// nullopt when the sample sits too close to the two-torsion locus (theta(3z)
// below threshold) or to a Weierstrass point (eta below threshold). The
// nullwerte product may be passed in when evaluating many samples at one tau.
std::optional<ProductFormulaResult> genus2_product_formula(const DivisorSample& sample,
                                                           const SiegelMatrix& tau, double epsilon);
std::optional<ProductFormulaResult> genus2_product_formula(const DivisorSample& sample,
                                                           const SiegelMatrix& tau, double epsilon,
                                                           const Complex& nullwerte_product);

}  // namespace thetadiv
