#pragma once
// Points of the Siegel upper half space: complex symmetric matrices with
// positive definite imaginary part, together with the cached real Cholesky
// factorization of Im tau that the lattice summation works with.

#include "thetadiv/linalg.hpp"

namespace thetadiv {

class SiegelMatrix {
public:
    // Throws std::invalid_argument if tau is not square, not symmetric
    // (beyond sym_tol relative), or Im tau is not positive definite.
    // Small asymmetries below the tolerance are symmetrized away.
    explicit SiegelMatrix(const ComplexMatrix& tau, double sym_tol = 1e-12);

    int n() const { return n_; }
    const ComplexMatrix& matrix() const { return tau_; }
    Complex operator()(int i, int j) const { return tau_(i, j); }
    double re(int i, int j) const { return tau_(i, j).real(); }
    double im(int i, int j) const { return tau_(i, j).imag(); }

    // Lower Cholesky factor L with L L^T = Im tau. The summation ellipsoid
    // uses the transposed (upper) factor U = L^T, so that U^T U = Im tau and
    // ||U v||^2 = v^T (Im tau) v.
    double chol(int i, int j) const { return chol_[i * n_ + j]; }

    // (Im tau)^{-1} y.
    RVec solve_im(const RVec& y) const;
    // pi * y^T (Im tau)^{-1} y with y = Im z; the exponential growth rate of
    // |theta| in the imaginary direction.
    double growth_exponent(const CVec& z) const;

    double sqrt_det_im() const;       // det U = prod_i L_ii
    double inv_factor_norm() const;   // Frobenius norm of U^{-1}, bounds ||U^{-1}||_2
    double cell_half_diameter() const;  // max_{u in [-1/2,1/2]^n} ||U u|| upper bound

private:
    int n_ = 0;
    ComplexMatrix tau_;
    std::vector<double> chol_;  // lower triangular, row-major
};

// Block-diagonal composition diag(t1, t2); the resulting point parametrizes
// a product of the two tori.
SiegelMatrix block_diag(const SiegelMatrix& t1, const SiegelMatrix& t2);

// Coefficients (alpha, beta) with z = tau*alpha + beta, both real.
void lattice_coordinates(const CVec& z, const SiegelMatrix& tau, RVec& alpha, RVec& beta);

// Representative of z modulo Z^n + tau Z^n with both coefficient vectors in
// [-1/2, 1/2]^n; rounding is round-half-even. Optionally reports the integer
// parts u, v with z = reduced + tau*u + v.
CVec lattice_reduce(const CVec& z, const SiegelMatrix& tau,
                    std::vector<long long>* u_out = nullptr,
                    std::vector<long long>* v_out = nullptr);

// Euclidean norm of the reduced representative of a - b.
double lattice_distance(const CVec& a, const CVec& b, const SiegelMatrix& tau);

}  // namespace thetadiv
