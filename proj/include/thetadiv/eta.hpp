#pragma once
// The cofactor form eta(g, h) = g^T h^c g built from a vector and the
// cofactor matrix of a square matrix, its recursion in the matrix size, and
// its evaluation on theta jets: eta(z, tau) = grad^T (Hess)^c grad.

#include "thetadiv/theta.hpp"

namespace thetadiv {

// Cofactor matrix: entry (i,j) is (-1)^{i+j} det of h with row i and column
// j removed; the 1x1 cofactor matrix is [1]. Minors of size <= 3 go through
// direct expansion, larger ones through pivoted LU. Sizes up to 8.
ComplexMatrix cofactor(const ComplexMatrix& h);

// gl^T h^c gr; eta_form is the symmetric case gl = gr.
Complex eta_bilinear(const CVec& gl, const CVec& gr, const ComplexMatrix& h);
Complex eta_form(const CVec& g, const ComplexMatrix& h);
// Cancellation mass sum_{k,l} |g_k| |g_l| |h^c_{kl}|; the natural scale for
// testing eta_form against zero.
double eta_form_scale(const CVec& g, const ComplexMatrix& h);

// |(m-1) eta(g,h) - sum_{k,l} (-1)^{k+l} h_{kl} eta(g del k / g del l, h del
// row k col l)|. Requires m >= 2. If scale_out is given it receives the sum
// of the magnitudes of all contributions.
double eta_recursion_residual(const CVec& g, const ComplexMatrix& h, double* scale_out = nullptr);

struct EtaValue {
    ScaledComplex v;         // eta(z, tau); log_scale is (n+1) times the jet's
    CVec at;                 // evaluation point
    double divisor_residual = 0.0;  // |theta(z, tau)|, raw
    double mantissa_scale = 0.0;    // cancellation mass of the cofactor assembly

    Complex value() const { return v.value(); }
};

EtaValue eta_point(const CVec& z, const SiegelMatrix& tau, double epsilon);
// Same, from a jet already computed at z.
EtaValue eta_point(const ThetaJet& jet, const CVec& z);

// Block-diagonal tau for product fixtures.
SiegelMatrix decomposable_tau(const SiegelMatrix& tau1, const SiegelMatrix& tau2);

}  // namespace thetadiv
