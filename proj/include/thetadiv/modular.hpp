#pragma once
// Integer symplectic matrices in block form (a b; c d), the congruence
// condition that both t(a)c and t(b)d have even diagonals, the action
// (z, tau) -> (t(c tau + d)^{-1} z, (a tau + b)(c tau + d)^{-1}), the
// exponential factors attached to lattice translations and to the group
// action, and residual-style verification of the transformation laws of
// theta and eta. The root of unity in the theta law is never computed;
// verification raises the observed ratio to the eighth power instead.

#include "thetadiv/divisor.hpp"

#include <optional>

namespace thetadiv {

class SymplecticInteger {
public:
    // Blocks are n x n, row-major. Throws std::invalid_argument unless
    // t(a)c = t(c)a, t(b)d = t(d)b and t(a)d - t(c)b = I hold exactly.
    SymplecticInteger(int n, std::vector<long long> a, std::vector<long long> b,
                      std::vector<long long> c, std::vector<long long> d);

    static SymplecticInteger identity(int n);
    static SymplecticInteger J(int n);  // (0 -I; I 0)
    static SymplecticInteger shear_diag(int n, int j);               // tau -> tau + 2 E_jj
    static SymplecticInteger shear_offdiag(int n, int j, int k);     // tau -> tau + E_jk + E_kj
    // (t(U)^{-1} 0; 0 U) for unimodular U (|det U| = 1 required).
    static SymplecticInteger gl_embed(int n, const std::vector<long long>& u);

    SymplecticInteger operator*(const SymplecticInteger& rhs) const;

    int n() const { return n_; }
    long long a(int i, int j) const { return a_[i * n_ + j]; }
    long long b(int i, int j) const { return b_[i * n_ + j]; }
    long long c(int i, int j) const { return c_[i * n_ + j]; }
    long long d(int i, int j) const { return d_[i * n_ + j]; }

    ComplexMatrix block_a() const;
    ComplexMatrix block_b() const;
    ComplexMatrix block_c() const;
    ComplexMatrix block_d() const;

private:
    int n_ = 0;
    std::vector<long long> a_, b_, c_, d_;
};

// Every diagonal entry of t(a)c and t(b)d is even.
bool gamma12_member(const SymplecticInteger& gamma);

// Transformed pair (z', tau'). tau' is symmetrized to remove roundoff
// asymmetry; throws std::runtime_error when c tau + d is numerically
// singular.
std::pair<CVec, SiegelMatrix> symplectic_act(const SymplecticInteger& gamma, const CVec& z,
                                             const SiegelMatrix& tau);

// p(z, u) = exp(-pi i u^T tau u - 2 pi i u^T z) for integer u; the factor
// picked up under z -> z + tau u + v. The exponent form avoids overflow.
Complex period_factor_exponent(const CVec& z, const SiegelMatrix& tau,
                               const std::vector<long long>& u);
Complex period_factor(const CVec& z, const SiegelMatrix& tau, const std::vector<long long>& u);

// q(z, gamma, tau) = exp(pi i z^T (c tau + d)^{-1} c z).
Complex automorphy_q_exponent(const CVec& z, const SymplecticInteger& gamma,
                              const SiegelMatrix& tau);
Complex automorphy_q(const CVec& z, const SymplecticInteger& gamma, const SiegelMatrix& tau);

struct AutomorphyReport {
    Complex ratio{0.0, 0.0};        // left side over predicted right side, root of unity aside
    double modulus_deviation = 0.0;  // | |ratio| - 1 |
    double root8_deviation = 0.0;    // | ratio^8 - 1 |
};

// theta(z', tau') against det(c tau + d)^{1/2} q theta(z, tau), principal
// square root branch. Samples too close to the divisor (scaled |theta| below
// 1e-6) are rejected as nullopt. flip_branch negates the square root; the
// eighth-power deviation must not feel it.
std::optional<AutomorphyReport> verify_theta_modular(const SymplecticInteger& gamma, const CVec& z,
                                                     const SiegelMatrix& tau, double epsilon,
                                                     bool flip_branch = false);

// eta(z', tau') against det(c tau + d)^{(n+5)/2} q^{n+1} eta(z, tau) on a
// divisor sample. z' is used directly (the transformed point stays on the
// transformed divisor); its residual under tau' is re-measured, with at most
// two polishing projection steps, and the sample is rejected unless it stays
// below 1e-7. Samples with eta too close to zero (ramification) are rejected.
std::optional<AutomorphyReport> verify_eta_modular(const SymplecticInteger& gamma,
                                                   const DivisorSample& point,
                                                   const SiegelMatrix& tau, double epsilon,
                                                   bool flip_branch = false);

}  // namespace thetadiv
