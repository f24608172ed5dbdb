#include "thetadiv/suites.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string_view>

namespace thetadiv::sweeps {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::string_view tag) {
    std::uint64_t h = 1469598103934665603ULL ^ seed;
    for (const char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

// Residual of two scaled complexes against a predicted multiplier given in
// exponent form: |b - exp(factor_exp + a.log_scale - b.log_scale) a| over
// (1 + the larger compared magnitude). Exponents cancel analytically, so
// the comparison stays conditioned even when raw values overflow.
double scaled_law_residual(const ScaledComplex& a, const ScaledComplex& b,
                           const Complex& factor_exp) {
    const Complex mult =
        std::exp(factor_exp + Complex(a.log_scale - b.log_scale, 0.0));
    const Complex predicted = mult * a.mantissa;
    const double scale = 1.0 + std::max(std::abs(b.mantissa), std::abs(predicted));
    return std::abs(b.mantissa - predicted) / scale;
}

CVec translate(const CVec& z, const SiegelMatrix& tau, const std::vector<long long>& u,
               const std::vector<long long>& v) {
    const int n = tau.n();
    CVec w(z);
    for (int i = 0; i < n; ++i) {
        Complex s(static_cast<double>(v[i]), 0.0);
        for (int j = 0; j < n; ++j) s += tau(i, j) * static_cast<double>(u[j]);
        w[i] += s;
    }
    return w;
}

CVec random_torus_point(const SiegelMatrix& tau, Rng& rng) {
    const int n = tau.n();
    CVec z(static_cast<std::size_t>(n));
    RVec alpha(static_cast<std::size_t>(n)), beta(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        alpha[i] = rng.uniform();
        beta[i] = rng.uniform();
    }
    for (int i = 0; i < n; ++i) {
        Complex s(beta[i], 0.0);
        for (int j = 0; j < n; ++j) s += tau(i, j) * alpha[j];
        z[i] = s;
    }
    return z;
}

ComplexMatrix random_matrix(int m, Rng& rng) {
    ComplexMatrix h(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) h(i, j) = rng.complex_box(-1.0, 1.0, -1.0, 1.0);
    return h;
}

}  // namespace

void SweepResult::note(std::size_t index, double residual, const std::string& detail) {
    ++evaluated;
    max_residual = std::max(max_residual, residual);
    if (residual > threshold) {
        pass = false;
        ++failure_count;
        if (failures.size() < 10) {
            nlohmann::ordered_json f;
            f["sample"] = index;
            f["residual"] = residual;
            if (!detail.empty()) f["detail"] = detail;
            failures.push_back(std::move(f));
        }
    }
}

nlohmann::ordered_json SweepResult::to_json() const {
    nlohmann::ordered_json j;
    j["check"] = name;
    j["threshold"] = threshold;
    j["requested"] = requested;
    j["evaluated"] = evaluated;
    j["rejected"] = rejected;
    j["max_residual"] = max_residual;
    j["failure_count"] = failure_count;
    j["failures"] = failures;
    j["pass"] = pass;
    return j;
}

std::vector<DivisorSample> sample_divisor(const SiegelMatrix& tau, std::size_t count, Rng& rng,
                                          double eps, std::size_t* rejected) {
    std::vector<DivisorSample> out;
    std::size_t failures = 0;
    while (out.size() < count) {
        const CVec anchor = random_torus_point(tau, rng);
        const CVec dir = rng.unit_direction(tau.n());
        try {
            out.push_back(divisor_solve(tau, anchor, dir, eps));
        } catch (const std::runtime_error&) {
            if (++failures > 8 * count + 32)
                throw std::runtime_error("sample_divisor: too many failed solves");
        }
    }
    if (rejected) *rejected = failures;
    return out;
}

SweepResult theta_quasiperiodicity(int n, std::size_t samples, std::uint64_t seed, double eps) {
    SweepResult r{.name = "quasiperiodicity", .threshold = 1e-9, .requested = samples};
    Rng rng(mix_seed(seed, "quasiperiod"));
    for (std::size_t s = 0; s < samples; ++s) {
        const SiegelMatrix tau = random_tau_near_i(n, rng);
        const CVec z = rng.complex_vector(n, 2.0);
        const auto u = rng.int_vector(n, -2, 2);
        const auto v = rng.int_vector(n, -2, 2);
        const ThetaEval e0 = theta_eval_scaled(z, tau, ThetaCharacteristic(n), eps);
        const ThetaEval e1 =
            theta_eval_scaled(translate(z, tau, u, v), tau, ThetaCharacteristic(n), eps);
        r.note(s, scaled_law_residual(e0.v, e1.v, period_factor_exponent(z, tau, u)));
    }
    return r;
}

SweepResult theta_symmetry(int n, std::size_t samples, std::uint64_t seed, double eps) {
    SweepResult r{.name = "symmetry", .threshold = 1e-12, .requested = samples};
    Rng rng(mix_seed(seed, "symmetry"));
    for (std::size_t s = 0; s < samples; ++s) {
        const SiegelMatrix tau = random_tau_near_i(n, rng);
        const CVec z = rng.complex_vector(n, 2.0);
        CVec mz(z);
        for (auto& x : mz) x = -x;
        const ThetaEval a = theta_eval_scaled(z, tau, ThetaCharacteristic(n), eps);
        const ThetaEval b = theta_eval_scaled(mz, tau, ThetaCharacteristic(n), eps);
        const double scale = 1.0 + std::max(std::abs(a.v.mantissa), std::abs(b.v.mantissa));
        r.note(s, std::abs(a.v.mantissa - b.v.mantissa) / scale);
    }
    return r;
}

SweepResult odd_char_vanishing(int n, std::size_t samples, std::uint64_t seed, double eps) {
    SweepResult r{.name = "odd_char_vanishing", .threshold = 1e-12, .requested = samples};
    Rng rng(mix_seed(seed, "oddchar"));
    const auto odd = ThetaCharacteristic::odd_list(n);
    const CVec origin(static_cast<std::size_t>(n), Complex(0.0, 0.0));
    for (std::size_t s = 0; s < samples; ++s) {
        const SiegelMatrix tau = random_tau_near_i(n, rng);
        const auto& chr = odd[static_cast<std::size_t>(rng.uniform_int(0, odd.size() - 1))];
        const ThetaEval e = theta_eval_scaled(origin, tau, chr, eps);
        r.note(s, std::abs(e.v.mantissa));
    }
    return r;
}

SweepResult eta_order_law(int n, std::size_t points, std::size_t shifts, std::uint64_t seed,
                          double eps) {
    SweepResult r{.name = "eta_order_law", .threshold = 1e-7, .requested = points * shifts};
    Rng rng(mix_seed(seed, "etaorder"));
    for (std::size_t p = 0; p < points; ++p) {
        const SiegelMatrix tau = random_tau_near_i(n, rng);
        std::size_t solver_rejects = 0;
        const auto samples = sample_divisor(tau, 1, rng, eps, &solver_rejects);
        r.rejected += solver_rejects;
        const DivisorSample& s = samples.front();
        const EtaValue e0 = eta_point(s.z, tau, eps);
        if (std::abs(e0.v.mantissa) < 1e-8 * (1.0 + e0.mantissa_scale)) {
            ++r.rejected;  // ramification point: the law degenerates to 0 = 0
            continue;
        }
        for (std::size_t k = 0; k < shifts; ++k) {
            const auto u = rng.int_vector(n, -1, 1);
            const auto v = rng.int_vector(n, -1, 1);
            const EtaValue e1 = eta_point(translate(s.z, tau, u, v), tau, eps);
            const Complex pexp = period_factor_exponent(s.z, tau, u);
            r.note(p * shifts + k,
                   scaled_law_residual(e0.v, e1.v, static_cast<double>(n + 1) * pexp));
        }
    }
    return r;
}

SweepResult adjugate_identity(std::size_t samples, std::uint64_t seed) {
    SweepResult r{.name = "adjugate_identity", .threshold = 1e-10, .requested = samples};
    Rng rng(mix_seed(seed, "adjugate"));
    for (std::size_t s = 0; s < samples; ++s) {
        const int m = 2 + static_cast<int>(s % 5);
        const ComplexMatrix h = random_matrix(m, rng);
        const ComplexMatrix c = cofactor(h);
        const Complex d = det(h);
        const ComplexMatrix prod = h * c.transposed();
        double worst = 0.0;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                double mass = std::abs(d);
                for (int k = 0; k < m; ++k) mass += std::abs(h(i, k)) * std::abs(c(j, k));
                const Complex expect = (i == j) ? d : Complex(0.0, 0.0);
                worst = std::max(worst, std::abs(prod(i, j) - expect) / (1.0 + mass));
            }
        r.note(s, worst);
    }
    return r;
}

SweepResult bordered_determinant(std::size_t samples, std::uint64_t seed) {
    SweepResult r{.name = "bordered_determinant", .threshold = 1e-10, .requested = samples};
    Rng rng(mix_seed(seed, "bordered"));
    for (std::size_t s = 0; s < samples; ++s) {
        const int m = 2 + static_cast<int>(s % 5);
        const ComplexMatrix h = random_matrix(m, rng);
        CVec g(static_cast<std::size_t>(m));
        for (auto& x : g) x = rng.complex_box(-1.0, 1.0, -1.0, 1.0);
        const Complex eta = eta_form(g, h);
        ComplexMatrix b(static_cast<std::size_t>(m + 1), static_cast<std::size_t>(m + 1));
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) b(i, j) = h(i, j);
            b(i, m) = g[i];
            b(m, i) = g[i];
        }
        const Complex db = det(b);
        const double scale = 1.0 + std::max(std::abs(eta), std::abs(db));
        r.note(s, std::abs(eta + db) / scale);
    }
    return r;
}

SweepResult eta_recursion(std::size_t samples, std::uint64_t seed) {
    SweepResult r{.name = "eta_recursion", .threshold = 1e-10, .requested = samples};
    Rng rng(mix_seed(seed, "recursion"));
    for (std::size_t s = 0; s < samples; ++s) {
        const int m = 2 + static_cast<int>(s % 5);
        const ComplexMatrix h = random_matrix(m, rng);
        CVec g(static_cast<std::size_t>(m));
        for (auto& x : g) x = rng.complex_box(-1.0, 1.0, -1.0, 1.0);
        double mass = 0.0;
        const double res = eta_recursion_residual(g, h, &mass);
        r.note(s, res / (1.0 + mass));
    }
    return r;
}

SweepResult eta_rank_vanishing(std::size_t samples, std::uint64_t seed) {
    SweepResult r{.name = "eta_rank_vanishing", .threshold = 1e-10, .requested = samples};
    Rng rng(mix_seed(seed, "rankvanish"));
    for (std::size_t s = 0; s < samples; ++s) {
        const int m = 2 + static_cast<int>(s % 5);
        CVec g(static_cast<std::size_t>(m)), p(static_cast<std::size_t>(m));
        for (auto& x : g) x = rng.complex_box(-1.0, 1.0, -1.0, 1.0);
        for (auto& x : p) x = rng.complex_box(-1.0, 1.0, -1.0, 1.0);
        ComplexMatrix h(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) h(i, j) = p[i] * g[j] + p[j] * g[i];
        const Complex eta = eta_form(g, h);
        r.note(s, std::abs(eta) / (1.0 + eta_form_scale(g, h)));
    }
    return r;
}

std::vector<SymplecticInteger> gamma_sample_set(int n) {
    std::vector<SymplecticInteger> out;
    const auto j = SymplecticInteger::J(n);
    out.push_back(j);
    for (int k = 0; k < n; ++k) out.push_back(SymplecticInteger::shear_diag(n, k));
    if (n >= 2) {
        out.push_back(SymplecticInteger::shear_offdiag(n, 0, 1));
        std::vector<long long> u(static_cast<std::size_t>(n) * n, 0);
        for (int k = 0; k < n; ++k) u[k * n + k] = 1;
        u[0 * n + 1] = 1;  // elementary unimodular transvection
        out.push_back(SymplecticInteger::gl_embed(n, u));
    }
    out.push_back(j * SymplecticInteger::shear_diag(n, 0));
    out.push_back(SymplecticInteger::shear_diag(n, 0) * j);
    out.push_back(SymplecticInteger::shear_diag(n, 0) * j * SymplecticInteger::shear_diag(n, 0));
    for (const auto& g : out)
        if (!gamma12_member(g))
            throw std::logic_error("gamma_sample_set: generator outside the congruence group");
    return out;
}

SweepResult theta_weight_law(int n, std::size_t samples_per_gamma, std::uint64_t seed,
                             double eps) {
    const auto gammas = gamma_sample_set(n);
    SweepResult r{.name = "theta_weight_law",
                  .threshold = 1e-6,
                  .requested = gammas.size() * samples_per_gamma};
    Rng rng(mix_seed(seed, "thetaweight"));
    std::size_t idx = 0;
    for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
        std::size_t accepted = 0, attempts = 0;
        while (accepted < samples_per_gamma && attempts < 20 * samples_per_gamma + 50) {
            ++attempts;
            const SiegelMatrix tau = random_tau_near_i(n, rng);
            const CVec z = rng.complex_vector(n, 1.0);
            const auto rep = verify_theta_modular(gammas[gi], z, tau, eps);
            if (!rep) {
                ++r.rejected;
                continue;
            }
            ++accepted;
            const double dev = std::max(rep->modulus_deviation, rep->root8_deviation);
            r.note(idx++, dev, "gamma " + std::to_string(gi));
        }
        if (accepted < samples_per_gamma) {
            r.pass = false;
            ++r.failure_count;
        }
    }
    return r;
}

SweepResult eta_weight_law(int n, std::size_t samples_per_gamma, std::uint64_t seed, double eps) {
    if (n != 1 && n != 2)
        throw std::invalid_argument("eta_weight_law: supported for n = 1 and 2");
    const auto gammas = gamma_sample_set(n);
    SweepResult r{.name = "eta_weight_law",
                  .threshold = 1e-6,
                  .requested = gammas.size() * samples_per_gamma};
    Rng rng(mix_seed(seed, "etaweight"));
    std::size_t idx = 0;
    for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
        std::size_t accepted = 0, attempts = 0;
        while (accepted < samples_per_gamma && attempts < 20 * samples_per_gamma + 50) {
            ++attempts;
            const SiegelMatrix tau =
                (n == 1) ? random_tau_line(rng) : random_tau_indecomposable(rng, eps);
            std::optional<DivisorSample> point;
            if (n == 1) {
                const CVec zstar{0.5 * (Complex(1.0, 0.0) + tau(0, 0))};
                point = divisor_sample_at(zstar, tau, eps);
            } else {
                try {
                    std::size_t rej = 0;
                    point = sample_divisor(tau, 1, rng, eps, &rej).front();
                    r.rejected += rej;
                } catch (const std::runtime_error&) {
                    point.reset();
                }
            }
            if (!point) {
                ++r.rejected;
                continue;
            }
            const auto rep = verify_eta_modular(gammas[gi], *point, tau, eps);
            if (!rep) {
                ++r.rejected;
                continue;
            }
            ++accepted;
            const double dev = std::max(rep->modulus_deviation, rep->root8_deviation);
            r.note(idx++, dev, "gamma " + std::to_string(gi));
        }
        if (accepted < samples_per_gamma) {
            r.pass = false;
            ++r.failure_count;
        }
    }
    return r;
}

SweepResult decomposable_eta(int n, int split, std::size_t samples, std::uint64_t seed,
                             double eps) {
    SweepResult r{.name = "decomposable_eta", .threshold = 1e-8, .requested = samples};
    std::optional<SiegelMatrix> tau;
    if (n == 2 && split == 1) tau = builtin_fixture("block", 2);
    if (n == 3 && split == 1) tau = builtin_fixture("block", 3);
    if (n == 3 && split == 2) tau = builtin_fixture("block-2-1", 3);
    if (!tau) throw std::invalid_argument("decomposable_eta: unsupported (n, split)");
    Rng rng(mix_seed(seed, "decomposable"));
    for (std::size_t s = 0; s < samples; ++s) {
        std::size_t rej = 0;
        const DivisorSample d = sample_divisor(*tau, 1, rng, eps, &rej).front();
        r.rejected += rej;
        const EtaValue e = eta_point(d.z, *tau, eps);
        r.note(s, std::abs(e.v.mantissa) / (1.0 + e.mantissa_scale));
    }
    return r;
}

SweepResult jacobi_formula(std::size_t samples, std::uint64_t seed, double eps) {
    SweepResult r{.name = "jacobi_derivative_formula", .threshold = 1e-10, .requested = samples};
    Rng rng(mix_seed(seed, "jacobi"));
    for (std::size_t s = 0; s < samples; ++s)
        r.note(s, jacobi_derivative_residual(random_tau_line(rng), eps));
    return r;
}

bool GaussCorrelation::pass() const {
    return zero_set.pass && converse.pass && half_periods.pass;
}

nlohmann::ordered_json GaussCorrelation::to_json() const {
    nlohmann::ordered_json j;
    j["eta_norm_max"] = eta_norm_max;
    j["dgamma_norm_max"] = dgamma_norm_max;
    j["checks"] = nlohmann::ordered_json::array(
        {zero_set.to_json(), converse.to_json(), half_periods.to_json()});
    j["pass"] = pass();
    return j;
}

GaussCorrelation gauss_correlation(std::size_t samples, std::uint64_t seed, double eps,
                                   const std::optional<SiegelMatrix>& tau_opt) {
    const SiegelMatrix tau = tau_opt ? *tau_opt : *builtin_fixture("iI2+0.1S", 2);
    if (!indecomposable(tau, eps))
        throw std::invalid_argument("gauss_correlation: tau must be indecomposable");

    GaussCorrelation g;
    g.zero_set = SweepResult{.name = "eta_zero_set", .threshold = 0.0, .requested = samples};
    g.converse = SweepResult{.name = "dgamma_zero_set", .threshold = 0.0, .requested = samples};
    g.half_periods = SweepResult{.name = "half_period_ramification", .threshold = 0.0,
                                 .requested = 6};

    Rng rng(mix_seed(seed, "gauss"));
    const auto w_points = weierstrass_points(tau, eps);

    struct Entry {
        double eta_hat;     // |eta mantissa| over its cancellation mass
        double dgamma;      // |det dGamma| in the chart
        double w_distance;  // lattice distance to the nearest odd half-period
        bool planted;
    };
    std::vector<Entry> entries;
    entries.reserve(samples + 6);

    auto measure = [&](const DivisorSample& s, bool planted) {
        const RamificationResidual rr = gauss_ramification_residual(s, tau, 1e-4, eps);
        double wd = 1e300;
        for (const auto& w : w_points) wd = std::min(wd, lattice_distance(s.z, w, tau));
        entries.push_back(Entry{rr.eta_abs / (1.0 + rr.eta_scale), rr.dgamma_det_abs, wd,
                                planted});
    };

    std::size_t rejected = 0;
    for (const DivisorSample& s : sample_divisor(tau, samples, rng, eps, &rejected))
        measure(s, false);
    g.zero_set.rejected = rejected;

    for (const auto& w : w_points) {
        const auto s = divisor_sample_at(w, tau, eps);
        if (!s) {
            g.half_periods.note(entries.size(), 1.0, "half-period rejected as sample");
            continue;
        }
        measure(*s, true);
    }

    for (const auto& e : entries) {
        g.eta_norm_max = std::max(g.eta_norm_max, e.eta_hat);
        g.dgamma_norm_max = std::max(g.dgamma_norm_max, e.dgamma);
    }
    const double eta_den = g.eta_norm_max > 0.0 ? g.eta_norm_max : 1.0;
    const double dg_den = g.dgamma_norm_max > 0.0 ? g.dgamma_norm_max : 1.0;

    // Population-normalized extremes correlation: a tight zero on one side
    // forces a loose zero on the other, and eta zeros sit at half-periods.
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const Entry& e = entries[i];
        const double eta_hat = e.eta_hat / eta_den;
        const double dg_hat = e.dgamma / dg_den;
        if (eta_hat < 1e-8) {
            const bool ok = dg_hat < 1e-4 && e.w_distance < 1e-3;
            g.zero_set.note(i, ok ? 0.0 : 1.0,
                            ok ? "" : "eta zero off the Weierstrass set");
        } else {
            ++g.zero_set.evaluated;
        }
        if (dg_hat < 1e-8) {
            const bool ok = eta_hat < 1e-4;
            g.converse.note(i, ok ? 0.0 : 1.0, ok ? "" : "unramified point with tiny dGamma");
        } else {
            ++g.converse.evaluated;
        }
        if (e.planted) {
            const bool ok = eta_hat < 1e-8 && dg_hat < 1e-4;
            g.half_periods.note(i, ok ? 0.0 : 1.0,
                                ok ? "" : "half-period fails the ramification pairing");
        }
    }
    return g;
}

bool Genus2Identities::pass() const {
    return f_vs_eta.pass && p_plus_q.pass && remark.pass && chart.pass;
}

nlohmann::ordered_json Genus2Identities::to_json() const {
    nlohmann::ordered_json j;
    j["checks"] = nlohmann::ordered_json::array(
        {f_vs_eta.to_json(), p_plus_q.to_json(), remark.to_json(), chart.to_json()});
    j["pass"] = pass();
    return j;
}

Genus2Identities genus2_identities(std::size_t taus, std::size_t samples, std::uint64_t seed,
                                   double eps, const std::optional<SiegelMatrix>& tau_opt) {
    Genus2Identities out;
    out.f_vs_eta = SweepResult{.name = "f_vs_eta", .threshold = 1e-7};
    out.p_plus_q = SweepResult{.name = "p_plus_q", .threshold = 1e-7};
    out.remark = SweepResult{.name = "wronskian_squared_eta", .threshold = 1e-7};
    out.chart = SweepResult{.name = "chart_covariance", .threshold = 1e-7};
    Rng rng(mix_seed(seed, "genus2id"));
    if (tau_opt) taus = 1;
    std::size_t idx = 0;
    for (std::size_t t = 0; t < taus; ++t) {
        const SiegelMatrix tau = tau_opt ? *tau_opt : random_tau_indecomposable(rng, eps);
        std::size_t rejected = 0;
        for (const DivisorSample& s : sample_divisor(tau, samples, rng, eps, &rejected)) {
            ++idx;
            FValue f{};
            try {
                f = F_value(s, tau, eps);
            } catch (const std::runtime_error&) {
                ++out.f_vs_eta.rejected;  // chart failure near a Weierstrass point
                continue;
            }
            out.f_vs_eta.note(idx, f.eta_residual);
            out.p_plus_q.note(idx, f.pq_residual);
            out.remark.note(idx, remark_identity_residual(s, tau, eps));

            const ThetaJet jet = theta_jet(s.z, tau, eps);
            const double floor = 1e-3 * jet.scale_mag();
            if (std::abs(jet.gradient[0]) > floor && std::abs(jet.gradient[1]) > floor) {
                const ChartValue w0 = wronskian_value_in_chart(s, tau, 0, eps);
                const ChartValue w1 = wronskian_value_in_chart(s, tau, 1, eps);
                // coefficient of (dz_1)^3 against (dz_0)^3: dz_0/dz_1 = -g_1/g_0
                const Complex ratio = -jet.gradient[1] / jet.gradient[0];
                const Complex predicted = w1.value * ratio * ratio * ratio;
                const double scale =
                    1.0 + std::max(std::abs(w0.value), std::abs(predicted));
                out.chart.note(idx, std::abs(w0.value - predicted) / scale);
            } else {
                ++out.chart.rejected;
            }
        }
        out.f_vs_eta.rejected += rejected;
    }
    out.f_vs_eta.requested = out.p_plus_q.requested = out.remark.requested =
        out.chart.requested = taus * samples;
    return out;
}

bool Genus2Product::pass() const { return residuals.pass && sign_constant; }

nlohmann::ordered_json Genus2Product::to_json() const {
    nlohmann::ordered_json j;
    j["residuals"] = residuals.to_json();
    j["signs"] = signs;
    j["sign_constant"] = sign_constant;
    j["pass"] = pass();
    return j;
}

Genus2Product genus2_product(std::size_t taus, std::size_t samples, std::uint64_t seed, double eps,
                             const std::optional<SiegelMatrix>& tau_opt) {
    Genus2Product out;
    out.residuals = SweepResult{.name = "product_formula", .threshold = 1e-6};
    Rng rng(mix_seed(seed, "genus2prod"));
    if (tau_opt) taus = 1;
    std::size_t idx = 0;
    for (std::size_t t = 0; t < taus; ++t) {
        const SiegelMatrix tau = tau_opt ? *tau_opt : random_tau_indecomposable(rng, eps);
        const Complex nulls = even_nullwerte_product(tau, eps);
        int tau_sign = 0;
        bool tau_constant = true;
        std::size_t accepted = 0, attempts = 0;
        while (accepted < samples && attempts < 12 * samples + 40) {
            ++attempts;
            std::size_t rej = 0;
            DivisorSample s;
            try {
                s = sample_divisor(tau, 1, rng, eps, &rej).front();
            } catch (const std::runtime_error&) {
                ++out.residuals.rejected;
                continue;
            }
            out.residuals.rejected += rej;
            const auto pf = genus2_product_formula(s, tau, eps, nulls);
            if (!pf) {
                ++out.residuals.rejected;
                continue;
            }
            ++accepted;
            out.residuals.note(idx++, pf->residual);
            if (tau_sign == 0)
                tau_sign = pf->sign;
            else if (tau_sign != pf->sign)
                tau_constant = false;
        }
        nlohmann::ordered_json sj;
        sj["tau_index"] = t;
        sj["sign"] = tau_sign;
        sj["constant"] = tau_constant;
        sj["samples"] = accepted;
        out.signs.push_back(std::move(sj));
        if (!tau_constant) out.sign_constant = false;
        if (accepted < samples) {
            out.residuals.pass = false;
            ++out.residuals.failure_count;
        }
    }
    out.residuals.requested = taus * samples;
    return out;
}

}  // namespace thetadiv::sweeps

namespace thetadiv::suites {

namespace {

using sweeps::SweepResult;

nlohmann::ordered_json header(const std::string& suite, const Options& o, std::size_t samples) {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["n"] = o.n;
    j["samples"] = samples;
    j["seed"] = o.seed;
    j["epsilon"] = o.eps;
    return j;
}

Report assemble(nlohmann::ordered_json j, std::vector<SweepResult> checks) {
    Report rep;
    bool pass = true;
    double max_res = 0.0;
    std::size_t failure_count = 0;
    auto arr = nlohmann::ordered_json::array();
    auto failures = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        pass = pass && c.pass;
        max_res = std::max(max_res, c.max_residual);
        failure_count += c.failure_count;
        for (const auto& f : c.failures)
            if (failures.size() < 10) {
                auto g = f;
                g["check"] = c.name;
                failures.push_back(std::move(g));
            }
        arr.push_back(c.to_json());
    }
    j["max_residual"] = max_res;
    j["failure_count"] = failure_count;
    j["failures"] = std::move(failures);
    j["checks"] = std::move(arr);
    j["pass"] = pass;
    rep.json = std::move(j);
    rep.pass = pass;
    rep.max_residual = max_res;
    return rep;
}

std::size_t pick(std::size_t requested, std::size_t fallback) {
    return requested ? requested : fallback;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "quasiperiod", "modular-theta", "modular-eta", "eta-lemmas",
        "decomposable", "gauss",        "genus2",      "jacobi"};
    return names;
}

Report run(const std::string& suite, const Options& o) {
    if (suite == "quasiperiod") {
        const std::size_t samples = pick(o.samples, 200);
        std::vector<SweepResult> checks = {
            sweeps::theta_quasiperiodicity(o.n, samples, o.seed, o.eps),
            sweeps::theta_symmetry(o.n, samples, o.seed, std::min(o.eps, 1e-13)),
            sweeps::odd_char_vanishing(o.n, samples, o.seed, std::min(o.eps, 1e-13))};
        if (o.n >= 2)
            checks.push_back(sweeps::eta_order_law(o.n, std::max<std::size_t>(samples / 10, 5), 9,
                                                   o.seed, o.eps));
        return assemble(header(suite, o, samples), std::move(checks));
    }
    if (suite == "modular-theta") {
        const std::size_t samples = pick(o.samples, 50);
        return assemble(header(suite, o, samples),
                        {sweeps::theta_weight_law(o.n, samples, o.seed, o.eps)});
    }
    if (suite == "modular-eta") {
        const std::size_t samples = pick(o.samples, 25);
        return assemble(header(suite, o, samples),
                        {sweeps::eta_weight_law(o.n, samples, o.seed, o.eps)});
    }
    if (suite == "eta-lemmas") {
        const std::size_t samples = pick(o.samples, 500);
        return assemble(header(suite, o, samples),
                        {sweeps::adjugate_identity(samples, o.seed),
                         sweeps::bordered_determinant(samples, o.seed),
                         sweeps::eta_recursion(samples, o.seed),
                         sweeps::eta_rank_vanishing(samples, o.seed)});
    }
    if (suite == "decomposable") {
        const std::size_t samples = pick(o.samples, 50);
        std::vector<SweepResult> checks;
        if (o.n == 2) {
            checks.push_back(sweeps::decomposable_eta(2, 1, samples, o.seed, o.eps));
        } else if (o.n == 3) {
            checks.push_back(sweeps::decomposable_eta(3, 1, samples, o.seed, o.eps));
            checks.push_back(sweeps::decomposable_eta(3, 2, samples, o.seed, o.eps));
        } else {
            throw std::invalid_argument("decomposable: supported for n = 2 and 3");
        }
        return assemble(header(suite, o, samples), std::move(checks));
    }
    if (suite == "gauss") {
        const std::size_t samples = pick(o.samples, 1000);
        const auto g = sweeps::gauss_correlation(samples, o.seed, o.eps, o.tau);
        auto j = header(suite, o, samples);
        j["max_residual"] = 0.0;
        j["failure_count"] = g.zero_set.failure_count + g.converse.failure_count +
                             g.half_periods.failure_count;
        j["failures"] = nlohmann::ordered_json::array();
        j["gauss"] = g.to_json();
        j["pass"] = g.pass();
        return Report{std::move(j), g.pass(), 0.0};
    }
    if (suite == "genus2") {
        const std::size_t samples = pick(o.samples, 30);
        const std::size_t taus = o.taus ? o.taus : 3;
        const auto ids = sweeps::genus2_identities(taus, samples, o.seed, o.eps, o.tau);
        const auto prod = sweeps::genus2_product(taus, samples, o.seed, o.eps, o.tau);
        auto j = header(suite, o, samples);
        j["taus"] = taus;
        const double max_res =
            std::max({ids.f_vs_eta.max_residual, ids.p_plus_q.max_residual,
                      ids.remark.max_residual, ids.chart.max_residual,
                      prod.residuals.max_residual});
        j["max_residual"] = max_res;
        j["failure_count"] = ids.f_vs_eta.failure_count + ids.p_plus_q.failure_count +
                             ids.remark.failure_count + ids.chart.failure_count +
                             prod.residuals.failure_count;
        j["failures"] = nlohmann::ordered_json::array();
        j["identities"] = ids.to_json();
        j["product_formula"] = prod.to_json();
        const bool pass = ids.pass() && prod.pass();
        j["pass"] = pass;
        return Report{std::move(j), pass, max_res};
    }
    if (suite == "jacobi") {
        const std::size_t samples = pick(o.samples, 100);
        return assemble(header(suite, o, samples),
                        {sweeps::jacobi_formula(samples, o.seed, o.eps)});
    }
    throw std::invalid_argument("unknown suite: " + suite);
}

}  // namespace thetadiv::suites
