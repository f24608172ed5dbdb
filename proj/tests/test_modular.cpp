#include "thetadiv/fixtures.hpp"
#include "thetadiv/modular.hpp"
#include "thetadiv/rng.hpp"
#include "thetadiv/suites.hpp"

#include <doctest.h>

#include <cmath>

using namespace thetadiv;

namespace {

SiegelMatrix tau_1d(double re, double im) {
    ComplexMatrix m(1, 1);
    m(0, 0) = Complex(re, im);
    return SiegelMatrix(m);
}

SymplecticInteger make_1d(long long a, long long b, long long c, long long d) {
    return SymplecticInteger(1, {a}, {b}, {c}, {d});
}

}  // namespace

TEST_CASE("symplectic relations are enforced") {
    CHECK_THROWS_AS(make_1d(1, 1, 1, 1), std::invalid_argument);  // det 0
    CHECK_THROWS_AS(make_1d(2, 0, 0, 1), std::invalid_argument);  // det 2
    CHECK_NOTHROW(make_1d(1, 2, 0, 1));
    CHECK_NOTHROW(SymplecticInteger::J(3));

    // 2x2 blocks with broken t(a)c symmetry.
    std::vector<long long> a = {1, 0, 0, 1}, b = {0, 0, 0, 0}, c = {0, 1, 0, 0}, d = {1, 0, 0, 1};
    CHECK_THROWS_AS(SymplecticInteger(2, a, b, c, d), std::invalid_argument);
}

TEST_CASE("congruence membership by even diagonals") {
    CHECK(gamma12_member(SymplecticInteger::identity(2)));
    CHECK(gamma12_member(SymplecticInteger::J(2)));
    CHECK_FALSE(gamma12_member(make_1d(1, 1, 0, 1)));
    CHECK(gamma12_member(make_1d(1, 2, 0, 1)));
    CHECK_FALSE(gamma12_member(make_1d(1, 0, 1, 1)));
    CHECK(gamma12_member(make_1d(1, 0, 2, 1)));
    CHECK(gamma12_member(SymplecticInteger::shear_diag(3, 1)));
    CHECK(gamma12_member(SymplecticInteger::shear_offdiag(2, 0, 1)));
}

TEST_CASE("congruence subgroup closed under sampled products") {
    Rng rng(51);
    const auto gens = sweeps::gamma_sample_set(2);
    for (int trial = 0; trial < 500; ++trial) {
        SymplecticInteger w = gens[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<long long>(gens.size()) - 1))];
        const int len = 1 + static_cast<int>(rng.uniform_int(0, 2));
        for (int k = 0; k < len; ++k)
            w = w * gens[static_cast<std::size_t>(
                        rng.uniform_int(0, static_cast<long long>(gens.size()) - 1))];
        CHECK(gamma12_member(w));
    }
}

TEST_CASE("symplectic action on (z, tau)") {
    Rng rng(52);
    const SiegelMatrix tau = random_tau_near_i(2, rng);
    const CVec z = rng.complex_vector(2, 1.0);

    const auto [z_id, tau_id] = symplectic_act(SymplecticInteger::identity(2), z, tau);
    for (int i = 0; i < 2; ++i) CHECK(std::abs(z_id[i] - z[i]) < 1e-14);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(std::abs(tau_id(i, j) - tau(i, j)) < 1e-13);

    // One dimension: J inverts, the shear translates.
    const SiegelMatrix t1 = tau_1d(0.3, 1.7);
    const CVec z1{Complex(0.4, -0.2)};
    const auto [zj, tj] = symplectic_act(SymplecticInteger::J(1), z1, t1);
    CHECK(std::abs(zj[0] - z1[0] / t1(0, 0)) < 1e-14);
    CHECK(std::abs(tj(0, 0) + 1.0 / t1(0, 0)) < 1e-14);

    const auto [zs, ts] = symplectic_act(SymplecticInteger::shear_diag(1, 0), z1, t1);
    CHECK(zs[0] == z1[0]);
    CHECK(std::abs(ts(0, 0) - (t1(0, 0) + 2.0)) < 1e-14);
}

TEST_CASE("period factor") {
    Rng rng(53);
    const SiegelMatrix tau = random_tau_near_i(2, rng);
    const CVec z = rng.complex_vector(2, 1.0);
    CHECK(period_factor(z, tau, {0, 0}) == Complex(1.0, 0.0));

    const SiegelMatrix t1 = tau_1d(0.2, 1.1);
    const CVec z1{Complex(0.3, 0.4)};
    const Complex expected =
        std::exp(Complex(0.0, -M_PI) * t1(0, 0) + Complex(0.0, -2.0 * M_PI) * z1[0]);
    CHECK(std::abs(period_factor(z1, t1, {1}) - expected) < 1e-14);

    // |theta(z + tau u + v) - p theta(z)| on modest shifts, raw values.
    for (int trial = 0; trial < 10; ++trial) {
        const CVec w = rng.complex_vector(2, 0.5);
        const auto u = rng.int_vector(2, -1, 1);
        const auto v = rng.int_vector(2, -1, 1);
        CVec ws(w);
        for (int i = 0; i < 2; ++i) {
            Complex s(static_cast<double>(v[i]), 0.0);
            for (int j = 0; j < 2; ++j) s += tau(i, j) * static_cast<double>(u[j]);
            ws[i] += s;
        }
        const Complex lhs = theta_eval(ws, tau, 1e-12);
        const Complex rhs = period_factor(w, tau, u) * theta_eval(w, tau, 1e-12);
        CHECK(std::abs(lhs - rhs) / (1.0 + std::abs(lhs)) < 1e-9);
    }
}

TEST_CASE("automorphy exponential") {
    Rng rng(54);
    const SiegelMatrix tau = random_tau_near_i(2, rng);
    const CVec z = rng.complex_vector(2, 1.0);

    // c = 0 gives the constant 1.
    CHECK(automorphy_q(z, SymplecticInteger::shear_diag(2, 0), tau) == Complex(1.0, 0.0));

    const SiegelMatrix t1 = tau_1d(0.1, 2.0);
    const CVec z1{Complex(0.7, 0.1)};
    const Complex expected = std::exp(Complex(0.0, M_PI) * z1[0] * z1[0] / t1(0, 0));
    CHECK(std::abs(automorphy_q(z1, SymplecticInteger::J(1), t1) - expected) < 1e-14);

    CVec mz(z);
    for (auto& x : mz) x = -x;
    CHECK(std::abs(automorphy_q(z, SymplecticInteger::J(2), tau) -
                   automorphy_q(mz, SymplecticInteger::J(2), tau)) < 1e-13);
}

TEST_CASE("theta transformation law, dimension one inversion") {
    const SiegelMatrix tau = tau_1d(0.0, 2.0);
    Rng rng(55);
    for (int trial = 0; trial < 25; ++trial) {
        const CVec z{rng.complex_box(-1, 1, -1, 1)};
        const auto rep = verify_theta_modular(SymplecticInteger::J(1), z, tau, 1e-12);
        if (!rep) continue;
        CHECK(rep->modulus_deviation < 1e-9);
        CHECK(rep->root8_deviation < 1e-8);
    }

    // Identity element: the ratio itself must be 1.
    const auto rep = verify_theta_modular(SymplecticInteger::identity(1),
                                          CVec{Complex(0.3, 0.2)}, tau, 1e-12);
    REQUIRE(rep.has_value());
    CHECK(std::abs(rep->ratio - Complex(1.0, 0.0)) < 1e-12);
}

TEST_CASE("theta transformation law under random words, dimension two") {
    Rng rng(56);
    const auto gens = sweeps::gamma_sample_set(2);
    for (int trial = 0; trial < 25; ++trial) {
        SymplecticInteger w = gens[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<long long>(gens.size()) - 1))];
        const int len = static_cast<int>(rng.uniform_int(0, 2));
        for (int k = 0; k < len; ++k)
            w = w * gens[static_cast<std::size_t>(
                        rng.uniform_int(0, static_cast<long long>(gens.size()) - 1))];
        const SiegelMatrix tau = random_tau_near_i(2, rng);
        const CVec z = rng.complex_vector(2, 1.0);
        const auto rep = verify_theta_modular(w, z, tau, 1e-12);
        if (!rep) continue;
        CHECK(rep->modulus_deviation < 1e-7);
        CHECK(rep->root8_deviation < 1e-7);
    }
}

TEST_CASE("branch flip moves the ratio but not the eighth power") {
    Rng rng(57);
    const SiegelMatrix tau = random_tau_near_i(2, rng);
    const CVec z = rng.complex_vector(2, 0.8);
    const auto g = SymplecticInteger::J(2);
    const auto a = verify_theta_modular(g, z, tau, 1e-12, false);
    const auto b = verify_theta_modular(g, z, tau, 1e-12, true);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(std::abs(a->ratio + b->ratio) < 1e-10);  // sign flip
    CHECK(a->root8_deviation == doctest::Approx(b->root8_deviation).epsilon(1e-6));
}

TEST_CASE("eta transformation law") {
    Rng rng(58);
    const SiegelMatrix tau = *builtin_fixture("iI2+0.1S", 2);

    DivisorSample s = divisor_solve(tau, rng.complex_vector(2, 0.4), rng.unit_direction(2), 1e-12);

    // Identity: ratio 1.
    const auto rid = verify_eta_modular(SymplecticInteger::identity(2), s, tau, 1e-12);
    REQUIRE(rid.has_value());
    CHECK(std::abs(rid->ratio - Complex(1.0, 0.0)) < 1e-10);

    // Inversion: weight (n+5)/2 with an eighth root of unity.
    const auto rj = verify_eta_modular(SymplecticInteger::J(2), s, tau, 1e-12);
    REQUIRE(rj.has_value());
    CHECK(rj->modulus_deviation < 1e-6);
    CHECK(rj->root8_deviation < 1e-6);

    // Diagonal shear: all factors degenerate to 1 and the divisor is
    // preserved, so the ratio itself is 1.
    const auto rs = verify_eta_modular(SymplecticInteger::shear_diag(2, 0), s, tau, 1e-12);
    REQUIRE(rs.has_value());
    CHECK(std::abs(rs->ratio - Complex(1.0, 0.0)) < 1e-8);

    // Branch flip multiplies the eta ratio by (-1)^(n+5) = -1 at n = 2.
    const auto rf = verify_eta_modular(SymplecticInteger::J(2), s, tau, 1e-12, true);
    REQUIRE(rf.has_value());
    CHECK(std::abs(rf->ratio + rj->ratio) < 1e-8);
    CHECK(rf->root8_deviation == doctest::Approx(rj->root8_deviation).epsilon(1e-6));
}

TEST_CASE("near-divisor samples are rejected") {
    Rng rng(59);
    const SiegelMatrix tau = *builtin_fixture("iI2+0.1S", 2);
    const DivisorSample s =
        divisor_solve(tau, rng.complex_vector(2, 0.4), rng.unit_direction(2), 1e-12);
    CHECK_FALSE(verify_theta_modular(SymplecticInteger::J(2), s.z, tau, 1e-12).has_value());
}
