#pragma once
// Verification sweeps: seeded, deterministic residual checks of the
// transformation laws and identities, with JSON reports. The named suites
// back the command line; the finer-grained sweeps back the acceptance runs.

#include "thetadiv/fixtures.hpp"
#include "thetadiv/identities.hpp"
#include "thetadiv/modular.hpp"
#include "thetadiv/rng.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace thetadiv::sweeps {

struct SweepResult {
    std::string name;
    double threshold = 0.0;
    std::size_t requested = 0;
    std::size_t evaluated = 0;
    std::size_t rejected = 0;
    std::size_t failure_count = 0;
    double max_residual = 0.0;
    bool pass = true;
    nlohmann::ordered_json failures = nlohmann::ordered_json::array();

    // Records one residual; failures beyond the threshold are listed (first
    // ten) and flip pass.
    void note(std::size_t index, double residual, const std::string& detail = {});
    nlohmann::ordered_json to_json() const;
};

// Divisor samples at seeded random anchors/directions; failed solves are
// retried and counted.
std::vector<DivisorSample> sample_divisor(const SiegelMatrix& tau, std::size_t count, Rng& rng,
                                          double eps, std::size_t* rejected = nullptr);

SweepResult theta_quasiperiodicity(int n, std::size_t samples, std::uint64_t seed, double eps);
SweepResult theta_symmetry(int n, std::size_t samples, std::uint64_t seed, double eps);
SweepResult odd_char_vanishing(int n, std::size_t samples, std::uint64_t seed, double eps);
SweepResult eta_order_law(int n, std::size_t points, std::size_t shifts, std::uint64_t seed,
                          double eps);
SweepResult adjugate_identity(std::size_t samples, std::uint64_t seed);
SweepResult bordered_determinant(std::size_t samples, std::uint64_t seed);
SweepResult eta_recursion(std::size_t samples, std::uint64_t seed);
SweepResult eta_rank_vanishing(std::size_t samples, std::uint64_t seed);
SweepResult theta_weight_law(int n, std::size_t samples_per_gamma, std::uint64_t seed, double eps);
SweepResult eta_weight_law(int n, std::size_t samples_per_gamma, std::uint64_t seed, double eps);
// split is the size of the first block of the decomposable fixture.
SweepResult decomposable_eta(int n, int split, std::size_t samples, std::uint64_t seed,
                             double eps);
SweepResult jacobi_formula(std::size_t samples, std::uint64_t seed, double eps);

// The congruence-subgroup elements the weight-law sweeps run over.
std::vector<SymplecticInteger> gamma_sample_set(int n);

struct GaussCorrelation {
    SweepResult zero_set;      // samples with tiny eta: dGamma tiny, point at an odd half-period
    SweepResult converse;      // samples with tiny dGamma: eta small
    SweepResult half_periods;  // the six planted points trip both sides
    double eta_norm_max = 0.0;
    double dgamma_norm_max = 0.0;
    bool pass() const;
    nlohmann::ordered_json to_json() const;
};
GaussCorrelation gauss_correlation(std::size_t samples, std::uint64_t seed, double eps,
                                   const std::optional<SiegelMatrix>& tau = std::nullopt);

struct Genus2Identities {
    SweepResult f_vs_eta;      // hessian form against eta/theta_c^2
    SweepResult p_plus_q;      // jet route against the directional route
    SweepResult remark;        // w^2 eta = F^3
    SweepResult chart;         // chart covariance of the Wronskian scalar
    bool pass() const;
    nlohmann::ordered_json to_json() const;
};
Genus2Identities genus2_identities(std::size_t taus, std::size_t samples, std::uint64_t seed,
                                   double eps,
                                   const std::optional<SiegelMatrix>& tau = std::nullopt);

struct Genus2Product {
    SweepResult residuals;
    nlohmann::ordered_json signs = nlohmann::ordered_json::array();  // one entry per tau
    bool sign_constant = true;
    bool pass() const;
    nlohmann::ordered_json to_json() const;
};
Genus2Product genus2_product(std::size_t taus, std::size_t samples, std::uint64_t seed, double eps,
                             const std::optional<SiegelMatrix>& tau = std::nullopt);

}  // namespace thetadiv::sweeps

namespace thetadiv::suites {

struct Options {
    int n = 2;
    std::size_t samples = 0;  // 0 keeps the suite default
    std::uint64_t seed = 1;
    double eps = 1e-12;
    std::optional<SiegelMatrix> tau;
    std::size_t taus = 0;  // 0 keeps the suite default
};

struct Report {
    nlohmann::ordered_json json;
    bool pass = false;
    double max_residual = 0.0;
};

const std::vector<std::string>& suite_names();
// Throws std::invalid_argument on an unknown suite name.
Report run(const std::string& suite, const Options& options);

}  // namespace thetadiv::suites
