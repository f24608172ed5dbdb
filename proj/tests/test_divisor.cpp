#include "thetadiv/fixtures.hpp"
#include "thetadiv/identities.hpp"
#include "thetadiv/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace thetadiv;

namespace {

SiegelMatrix tau_1d(double re, double im) {
    ComplexMatrix m(1, 1);
    m(0, 0) = Complex(re, im);
    return SiegelMatrix(m);
}

}  // namespace

TEST_CASE("dimension one: the divisor is the shifted half period") {
    for (const auto& tau : {tau_1d(0.0, 1.0), tau_1d(0.4, 1.6), tau_1d(-0.7, 0.9)}) {
        const DivisorSample s =
            divisor_solve(tau, CVec{Complex(0.0, 0.0)}, CVec{Complex(1.0, 0.0)}, 1e-12);
        CHECK(s.residual < 1e-10);
        const CVec expected{0.5 * (Complex(1.0, 0.0) + tau(0, 0))};
        CHECK(lattice_distance(s.z, expected, tau) < 1e-8);
        CHECK(s.tangent_basis.empty());
    }
    CHECK_THROWS_AS(
        divisor_solve(tau_1d(0, 1), CVec{Complex(0, 0)}, CVec{Complex(0, 0)}, 1e-12),
        std::invalid_argument);
}

TEST_CASE("sample invariants: residual, orthogonality, smoothness") {
    Rng rng(61);
    const SiegelMatrix tau = *builtin_fixture("iI2+0.1S", 2);
    for (int trial = 0; trial < 15; ++trial) {
        const CVec anchor = rng.complex_vector(2, 0.8);
        const DivisorSample s = divisor_solve(tau, anchor, rng.unit_direction(2), 1e-12);
        CHECK(s.residual < 1e-10);
        const ThetaJet jet = theta_jet(s.z, tau, 1e-12);
        CHECK(norm(jet.gradient) > 1e-6 * jet.scale_mag());
        const Complex ortho = dot(jet.gradient, s.tangent);
        CHECK(std::abs(ortho) < 1e-9 * norm(jet.gradient) * norm(s.tangent));

        // Orthogonality survives one more projection step.
        const CVec z2 = project_onto_divisor(s.z, tau, 1e-12);
        const ThetaJet jet2 = theta_jet(z2, tau, 1e-12);
        CHECK(std::abs(dot(jet2.gradient, s.tangent)) <
              1e-8 * norm(jet2.gradient) * norm(s.tangent));
    }
}

TEST_CASE("solver converges at an odd half period anchor") {
    Rng rng(62);
    const SiegelMatrix tau = *builtin_fixture("iI2+0.1S", 2);
    const auto odd = ThetaCharacteristic::odd_list(2);
    const CVec anchor = half_period(tau, odd[2]);
    const DivisorSample s = divisor_solve(tau, anchor, rng.unit_direction(2), 1e-12);
    CHECK(s.residual < 1e-10);
    CHECK(lattice_distance(s.z, anchor, tau) < 1e-6);
}

TEST_CASE("half periods") {
    Rng rng(63);
    const SiegelMatrix tau = random_tau_near_i(2, rng);

    const CVec zero = half_period(tau, ThetaCharacteristic(2));
    CHECK(norm(zero) == 0.0);

    const SiegelMatrix t1 = tau_1d(0.3, 1.2);
    const CVec hp = half_period(t1, ThetaCharacteristic({1}, {1}));
    CHECK(std::abs(hp[0] - 0.5 * (t1(0, 0) + Complex(1.0, 0.0))) < 1e-15);

    for (const auto& chr : ThetaCharacteristic::odd_list(2))
        CHECK(std::abs(theta_eval(half_period(tau, chr), tau, 1e-12)) < 1e-10);
}

TEST_CASE("gauss map: normalization, refinement stability, parity") {
    Rng rng(64);
    const SiegelMatrix tau = *builtin_fixture("iI2+0.1S", 2);
    const DivisorSample s =
        divisor_solve(tau, rng.complex_vector(2, 0.7), rng.unit_direction(2), 1e-12);

    const CVec w = gauss_map(s, tau, 1e-12);
    double maxmod = 0.0;
    for (const auto& x : w) maxmod = std::max(maxmod, std::abs(x));
    CHECK(maxmod == doctest::Approx(1.0));

    const CVec w_fine = gauss_map(s, tau, 1e-13);
    for (int i = 0; i < 2; ++i) CHECK(std::abs(w[i] - w_fine[i]) < 1e-8);

    // Opposite point: the gradient is odd, so the projective image agrees.
    CVec mz(s.z);
    for (auto& x : mz) x = -x;
    const auto sneg = divisor_sample_at(lattice_reduce(mz, tau), tau, 1e-12);
    REQUIRE(sneg.has_value());
    const CVec wneg = gauss_map(*sneg, tau, 1e-12);
    for (int i = 0; i < 2; ++i) CHECK(std::abs(w[i] - wneg[i]) < 1e-9);
}

TEST_CASE("ramification residuals: generic points clear, half periods ramified") {
    Rng rng(65);
    const SiegelMatrix tau = *builtin_fixture("iI2+0.1S", 2);

    // Generic samples sit away from the ramification locus.
    for (int trial = 0; trial < 5; ++trial) {
        const DivisorSample s =
            divisor_solve(tau, rng.complex_vector(2, 0.8), rng.unit_direction(2), 1e-12);
        const RamificationResidual r = gauss_ramification_residual(s, tau, 1e-4, 1e-12);
        CHECK(r.eta_abs / (1.0 + r.eta_scale) > 1e-6);
        CHECK(r.dgamma_det_abs > 1e-6);
    }

    // Approaching an odd half period along the divisor, both residuals
    // shrink together.
    const CVec w = half_period(tau, ThetaCharacteristic::odd_list(2)[0]);
    const auto base = divisor_sample_at(w, tau, 1e-12);
    REQUIRE(base.has_value());
    double last_eta = -1.0, last_dg = -1.0;
    for (const double delta : {3e-2, 3e-3}) {
        CVec z(base->z);
        for (int i = 0; i < 2; ++i) z[i] += delta * base->tangent[i];
        const auto s = divisor_sample_at(project_onto_divisor(z, tau, 1e-12, 2), tau, 1e-12);
        REQUIRE(s.has_value());
        const RamificationResidual r = gauss_ramification_residual(*s, tau, 1e-4, 1e-12);
        const double eta_hat = r.eta_abs / (1.0 + r.eta_scale);
        if (last_eta >= 0.0) {
            CHECK(eta_hat < last_eta);
            CHECK(r.dgamma_det_abs < last_dg);
        }
        last_eta = eta_hat;
        last_dg = r.dgamma_det_abs;
    }

    // At the half period itself both vanish to the working precision.
    const RamificationResidual r0 = gauss_ramification_residual(*base, tau, 1e-4, 1e-12);
    CHECK(r0.eta_abs / (1.0 + r0.eta_scale) < 1e-10);
    CHECK(r0.dgamma_det_abs < 1e-6);
}

TEST_CASE("ramification on a decomposable surface: eta flat zero") {
    Rng rng(66);
    const SiegelMatrix tau = *builtin_fixture("block", 2);
    for (int trial = 0; trial < 5; ++trial) {
        const DivisorSample s =
            divisor_solve(tau, rng.complex_vector(2, 0.6), rng.unit_direction(2), 1e-12);
        const EtaValue e = eta_point(s.z, tau, 1e-12);
        CHECK(std::abs(e.v.mantissa) < 1e-8 * (1.0 + e.mantissa_scale));
    }
}

TEST_CASE("lattice reduction round trip") {
    Rng rng(67);
    const SiegelMatrix tau = random_tau_near_i(2, rng);
    for (int trial = 0; trial < 20; ++trial) {
        const CVec z = rng.complex_vector(2, 3.0);
        std::vector<long long> u, v;
        const CVec r = lattice_reduce(z, tau, &u, &v);
        // representative + tau u + v recovers the input
        CVec back(r);
        for (int i = 0; i < 2; ++i) {
            Complex s(static_cast<double>(v[i]), 0.0);
            for (int j = 0; j < 2; ++j) s += tau(i, j) * static_cast<double>(u[j]);
            back[i] += s;
        }
        CHECK(std::abs(back[0] - z[0]) < 1e-12);
        CHECK(std::abs(back[1] - z[1]) < 1e-12);
        RVec alpha, beta;
        lattice_coordinates(r, tau, alpha, beta);
        for (int i = 0; i < 2; ++i) {
            CHECK(std::abs(alpha[i]) <= 0.5 + 1e-9);
            CHECK(std::abs(beta[i]) <= 0.5 + 1e-9);
        }
    }
}
