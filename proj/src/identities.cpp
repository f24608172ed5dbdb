#include "thetadiv/identities.hpp"

#include <cmath>
#include <stdexcept>

namespace thetadiv {

namespace {

constexpr double kPi = M_PI;

struct ChartFrame {
    ThetaJet jet;
    int chart = 0;  // largest gradient component, used in denominators
    int coord = 0;  // the complementary local coordinate
    CVec tangent;   // tangent normalized to the chart: tangent[coord] = 1
    Complex eta_m{0.0, 0.0};
};

ChartFrame make_frame(const DivisorSample& sample, const SiegelMatrix& tau, int forced_chart,
                      double epsilon) {
    if (tau.n() != 2) throw std::invalid_argument("chart frame: n must be 2");
    ChartFrame f;
    f.jet = theta_jet(sample.z, tau, epsilon);
    if (forced_chart < 0) {
        f.chart = std::abs(f.jet.gradient[1]) > std::abs(f.jet.gradient[0]) ? 1 : 0;
    } else {
        f.chart = forced_chart;
    }
    f.coord = 1 - f.chart;
    const double threshold = 1e-6 * f.jet.scale_mag();
    if (!(std::abs(f.jet.gradient[f.chart]) > threshold))
        throw std::runtime_error("chart frame: gradient vanishes (Weierstrass point)");
    f.tangent.assign(2, Complex(0.0, 0.0));
    f.tangent[f.coord] = Complex(1.0, 0.0);
    f.tangent[f.chart] = -f.jet.gradient[f.coord] / f.jet.gradient[f.chart];
    f.eta_m = eta_form(f.jet.gradient, f.jet.hessian);
    return f;
}

}  // namespace

double jacobi_derivative_residual(const SiegelMatrix& tau, double epsilon) {
    if (tau.n() != 1) throw std::invalid_argument("jacobi_derivative_residual: tau must be 1x1");
    const Complex t = tau(0, 0);
    const CVec zstar{0.5 * (Complex(1.0, 0.0) + t)};
    const ThetaJet jet = theta_jet(zstar, tau, epsilon);
    const Complex lhs = std::exp(Complex(0.0, kPi / 4.0) * t) * jet.gradient_raw()[0];

    const CVec origin{Complex(0.0, 0.0)};
    const Complex t00 = theta_eval(origin, tau, ThetaCharacteristic({0}, {0}), epsilon);
    const Complex t01 = theta_eval(origin, tau, ThetaCharacteristic({0}, {1}), epsilon);
    const Complex t10 = theta_eval(origin, tau, ThetaCharacteristic({1}, {0}), epsilon);
    const Complex rhs = Complex(0.0, kPi) * t00 * t01 * t10;
    return std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
}

ChartValue wronskian_value_in_chart(const DivisorSample& sample, const SiegelMatrix& tau,
                                    int chart, double epsilon) {
    const ChartFrame f = make_frame(sample, tau, chart, epsilon);
    const Complex gc = f.jet.gradient[f.chart];
    ChartValue v;
    v.chart = f.chart;
    v.at = sample.z;
    // Coefficient of (dz_coord)^3. The frame column carrying the constant 1
    // moves with the chart, flipping the Wronskian determinant's sign: in
    // the chart with coordinate z_0 the value is -eta/g_1^3, in the other
    // +eta/g_0^3. The three growth factors cancel, so this is scale-free.
    const double sign = (f.chart == 1) ? -1.0 : 1.0;
    v.value = sign * f.eta_m / (gc * gc * gc);
    return v;
}

ChartValue wronskian_value(const DivisorSample& sample, const SiegelMatrix& tau, double epsilon) {
    return wronskian_value_in_chart(sample, tau, -1, epsilon);
}

FValue F_value(const DivisorSample& sample, const SiegelMatrix& tau, double epsilon) {
    const ChartFrame f = make_frame(sample, tau, -1, epsilon);

    // Hessian route: quadratic form on the chart tangent.
    Complex p(0.0, 0.0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) p += f.tangent[i] * f.jet.hessian(i, j) * f.tangent[j];

    // Independent route through the directional power sum: the implicit
    // second derivative of the chart coordinate is -D2/theta_chart, so the
    // first-derivative term of the vanishing second jet along the curve is
    // q = -D2; the two routes must cancel.
    const ScaledComplex d2 = directional_derivative_scaled(sample.z, tau, f.tangent, 2, epsilon);
    const Complex q = -d2.mantissa;

    const Complex gc = f.jet.gradient[f.chart];
    const Complex eta_route = f.eta_m / (gc * gc);

    FValue out;
    out.f.chart = f.chart;
    out.f.at = sample.z;
    out.f.value = p;
    out.pq_residual = std::abs(p + q) / (1.0 + std::max(std::abs(p), std::abs(q)));
    out.eta_residual =
        std::abs(p - eta_route) / (1.0 + std::max(std::abs(p), std::abs(eta_route)));
    return out;
}

double remark_identity_residual(const DivisorSample& sample, const SiegelMatrix& tau,
                                double epsilon) {
    const ChartFrame f = make_frame(sample, tau, -1, epsilon);
    const Complex gc = f.jet.gradient[f.chart];
    const Complex w = -f.eta_m / (gc * gc * gc);
    Complex p(0.0, 0.0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) p += f.tangent[i] * f.jet.hessian(i, j) * f.tangent[j];
    const Complex lhs = w * w * f.eta_m;
    const Complex rhs = p * p * p;
    return std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
}

bool indecomposable(const SiegelMatrix& tau, double epsilon) {
    if (tau.n() != 2) throw std::invalid_argument("indecomposable: tau must be 2x2");
    const CVec origin(2, Complex(0.0, 0.0));
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (const auto& chr : ThetaCharacteristic::even_list(2)) {
        const double v = std::abs(theta_eval(origin, tau, chr, epsilon));
        if (first) {
            lo = hi = v;
            first = false;
        } else {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    return lo >= 1e-8 * hi;
}

std::vector<CVec> weierstrass_points(const SiegelMatrix& tau, double epsilon) {
    if (tau.n() != 2) throw std::invalid_argument("weierstrass_points: tau must be 2x2");
    if (!indecomposable(tau, epsilon))
        throw std::domain_error("weierstrass_points: tau decomposable, divisor reducible");
    std::vector<CVec> pts;
    for (const auto& chr : ThetaCharacteristic::odd_list(2))
        pts.push_back(half_period(tau, chr));
    return pts;
}

Complex even_nullwerte_product(const SiegelMatrix& tau, double epsilon) {
    if (tau.n() != 2) throw std::invalid_argument("even_nullwerte_product: tau must be 2x2");
    const CVec origin(2, Complex(0.0, 0.0));
    Complex p(1.0, 0.0);
    for (const auto& chr : ThetaCharacteristic::even_list(2)) {
        const Complex v = theta_eval(origin, tau, chr, epsilon);
        p *= v * v;
    }
    return p;
}

std::optional<ProductFormulaResult> genus2_product_formula(const DivisorSample& sample,
                                                           const SiegelMatrix& tau, double epsilon,
                                                           const Complex& nullwerte_product) {
    if (tau.n() != 2) throw std::invalid_argument("genus2_product_formula: tau must be 2x2");
    const ThetaJet jet = theta_jet(sample.z, tau, epsilon);
    const EtaValue eta = eta_point(jet, sample.z);
    if (std::abs(eta.v.mantissa) < 1e-4 * (1.0 + eta.mantissa_scale))
        return std::nullopt;  // too close to a Weierstrass point

    CVec z3(sample.z);
    for (auto& x : z3) x *= 3.0;
    const ThetaEval t3 = theta_eval_scaled(z3, tau, ThetaCharacteristic(2), epsilon);
    if (std::abs(t3.v.mantissa) < 1e-4) return std::nullopt;  // near the two-torsion locus

    const Complex den = std::pow(kPi, 12) * nullwerte_product * t3.v.mantissa;
    const Complex log_ratio = 3.0 * eta.v.log() - std::log(den) - t3.v.log_scale;

    ProductFormulaResult r;
    r.ratio = std::exp(log_ratio);
    r.sign = r.ratio.real() >= 0.0 ? 1 : -1;
    r.residual = std::abs(r.ratio - Complex(static_cast<double>(r.sign), 0.0));
    return r;
}

std::optional<ProductFormulaResult> genus2_product_formula(const DivisorSample& sample,
                                                           const SiegelMatrix& tau,
                                                           double epsilon) {
    return genus2_product_formula(sample, tau, epsilon, even_nullwerte_product(tau, epsilon));
}

}  // namespace thetadiv
