// Acceptance runner: one line per criterion, nonzero exit when any fails.
// Sample counts and tolerances are fixed here; the seeds make every run
// reproducible.

#include "thetadiv/suites.hpp"

#include <cstdio>
#include <string>
#include <vector>

using namespace thetadiv;

namespace {

int g_failures = 0;

void report(const std::string& id, bool pass, const std::string& what, double worst) {
    std::printf("[%s] %s %s (worst residual %.3e)\n", pass ? "PASS" : "FAIL", id.c_str(),
                what.c_str(), worst);
    if (!pass) ++g_failures;
}

void report(const std::string& id, bool pass, const std::string& what) {
    std::printf("[%s] %s %s\n", pass ? "PASS" : "FAIL", id.c_str(), what.c_str());
    if (!pass) ++g_failures;
}

double worst(const std::vector<sweeps::SweepResult>& rs) {
    double m = 0.0;
    for (const auto& r : rs) m = std::max(m, r.max_residual);
    return m;
}

bool all_pass(const std::vector<sweeps::SweepResult>& rs) {
    for (const auto& r : rs)
        if (!r.pass) return false;
    return true;
}

}  // namespace

int main() {
    const std::uint64_t seed = 20240801;
    const double eps = 1e-12;

    {  // C1: quasi-periodicity under lattice translations, n = 1..4
        std::vector<sweeps::SweepResult> rs;
        for (int n = 1; n <= 4; ++n)
            rs.push_back(sweeps::theta_quasiperiodicity(n, 1000, seed + n, eps));
        report("C01", all_pass(rs), "quasi-periodicity, 1000 samples per n in 1..4, tol 1e-9",
               worst(rs));
    }

    {  // C2: symmetry in z and odd-characteristic vanishing at the origin
        std::vector<sweeps::SweepResult> rs;
        for (int n = 1; n <= 4; ++n) {
            rs.push_back(sweeps::theta_symmetry(n, 250, seed + n, 1e-13));
            rs.push_back(sweeps::odd_char_vanishing(n, 250, seed + n, 1e-13));
        }
        report("C02", all_pass(rs), "symmetry and odd vanishing, n in 1..4, tol 1e-12", worst(rs));
    }

    {  // C3: adjugate identity and bordered-determinant oracle
        std::vector<sweeps::SweepResult> rs = {sweeps::adjugate_identity(1000, seed),
                                               sweeps::bordered_determinant(1000, seed)};
        report("C03", all_pass(rs), "cofactor algebra, 1000 matrices each, tol 1e-10", worst(rs));
    }

    {  // C4: size recursion of the cofactor form
        const auto r = sweeps::eta_recursion(1000, seed);
        report("C04", r.pass, "form recursion, 1000 instances m = 2..6, tol 1e-10",
               r.max_residual);
    }

    {  // C5: rank-structured vanishing
        const auto r = sweeps::eta_rank_vanishing(1000, seed);
        report("C05", r.pass, "rank-structured vanishing, 1000 instances, tol 1e-10",
               r.max_residual);
    }

    {  // C6: order of eta under lattice translations on the divisor
        std::vector<sweeps::SweepResult> rs = {sweeps::eta_order_law(2, 200, 9, seed, eps),
                                               sweeps::eta_order_law(3, 200, 9, seed, eps)};
        report("C06", all_pass(rs), "eta order law, 200 points x 9 shifts, n = 2,3, tol 1e-7",
               worst(rs));
    }

    {  // C7: modular weight laws over the congruence subgroup
        std::vector<sweeps::SweepResult> rs = {sweeps::theta_weight_law(1, 50, seed, eps),
                                               sweeps::theta_weight_law(2, 50, seed, eps),
                                               sweeps::eta_weight_law(1, 50, seed, eps),
                                               sweeps::eta_weight_law(2, 50, seed, eps)};
        report("C07", all_pass(rs),
               "weight laws, n = 1,2, 5+ group elements, 50 accepted samples each, tol 1e-6",
               worst(rs));
    }

    {  // C8: eta vanishes identically on decomposable divisors
        std::vector<sweeps::SweepResult> rs = {sweeps::decomposable_eta(2, 1, 200, seed, eps),
                                               sweeps::decomposable_eta(3, 1, 200, seed, eps),
                                               sweeps::decomposable_eta(3, 2, 200, seed, eps)};
        report("C08", all_pass(rs), "decomposable vanishing, 200 samples per split, tol 1e-8",
               worst(rs));
    }

    {  // C9: the zero set of eta is the ramification locus of the Gauss map
        const auto g = sweeps::gauss_correlation(10000, seed, eps);
        report("C09", g.pass(),
               "Gauss map ramification vs eta zeros, 10000 samples plus 6 half-periods");
    }

    {  // C10: Jacobi derivative formula
        const auto r = sweeps::jacobi_formula(100, seed, eps);
        report("C10", r.pass, "Jacobi derivative formula, 100 random tau, tol 1e-10",
               r.max_residual);
    }

    {  // C11: chart identities on surfaces
        const auto g = sweeps::genus2_identities(10, 100, seed, eps);
        report("C11", g.pass(),
               "surface chart identities (F routes, P+Q, w^2 eta = F^3, covariance), "
               "10 tau x 100 samples, tol 1e-7",
               std::max({g.f_vs_eta.max_residual, g.p_plus_q.max_residual, g.remark.max_residual,
                         g.chart.max_residual}));
    }

    {  // C12: cubed eta product formula with a constant sign per tau
        const auto g = sweeps::genus2_product(10, 50, seed, eps);
        report("C12", g.pass(),
               "cubed eta product formula, 10 tau x 50 samples, tol 1e-6, constant sign",
               g.residuals.max_residual);
    }

    {  // C13: byte-identical reports on reruns with the same seed
        bool identical = true;
        for (const auto& name : suites::suite_names()) {
            suites::Options o;
            o.seed = 99;
            o.n = (name == "modular-eta" || name == "decomposable" || name == "jacobi") ? 2 : 2;
            if (name == "gauss") o.samples = 500;
            const auto a = suites::run(name, o);
            const auto b = suites::run(name, o);
            if (a.json.dump() != b.json.dump()) {
                identical = false;
                std::printf("  suite %s is not deterministic\n", name.c_str());
            }
        }
        report("C13", identical, "determinism: all 8 suites re-run byte-identically");
    }

    std::printf("%s: %d criterion(s) failed\n", g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                g_failures);
    return g_failures == 0 ? 0 : 1;
}
