#pragma once
// Numerical access to the zero locus of theta: one-dimensional complex
// Newton iteration along lines, smooth-point samples with tangent data, the
// Gauss map (gradient covector up to scale), and its finite-difference
// differential along the divisor.

#include "thetadiv/eta.hpp"

#include <optional>

namespace thetadiv {

struct DivisorSample {
    CVec z;                         // lattice-reduced point with theta(z) ~ 0
    double residual = 0.0;          // |theta(z, tau)|, raw
    CVec tangent;                   // first tangent basis vector (empty when n = 1)
    std::vector<CVec> tangent_basis;  // n-1 vectors spanning ker of the gradient covector
    double gradient_norm = 0.0;     // mantissa-level norm of the gradient
    double jet_scale = 0.0;         // mantissa-level jet magnitude at z
};

struct DivisorSolveOptions {
    double theta_tol = 1e-12;       // Newton convergence threshold on the scaled |theta|
    double residual_tol = 1e-10;    // acceptance threshold on the raw |theta|
    int max_iters = 50;
    double smooth_threshold = 1e-6;  // gradient_norm > smooth_threshold * jet_scale
};

// Newton iteration on t -> theta(anchor + t*direction) from the fixed 5x5
// start grid over [-2,2]^2, nearest starts first. The first root that
// converges, reduces into the fundamental cell, polishes below the residual
// tolerance and has a gradient clear of the smooth-point threshold is
// returned. Throws std::runtime_error when no start succeeds.
DivisorSample divisor_solve(const SiegelMatrix& tau, const CVec& anchor, const CVec& direction,
                            double epsilon, const DivisorSolveOptions& opts = {});

// Builds a sample directly at a given near-divisor point: a few Newton
// projection steps along the gradient, then the same acceptance checks.
std::optional<DivisorSample> divisor_sample_at(const CVec& z, const SiegelMatrix& tau,
                                               double epsilon,
                                               const DivisorSolveOptions& opts = {});

// z = tau a + b for the characteristic (a, b).
CVec half_period(const SiegelMatrix& tau, const ThetaCharacteristic& chr);

// One Newton projection step z -> z - theta(z) conj(g)/||g||^2 onto the
// divisor; steps times. Throws when the gradient degenerates.
CVec project_onto_divisor(const CVec& z, const SiegelMatrix& tau, double epsilon, int steps = 1);

// Gradient covector at the sample, normalized so the largest-modulus
// coordinate is 1: homogeneous coordinates of the tangent hyperplane.
CVec gauss_map(const DivisorSample& sample, const SiegelMatrix& tau, double epsilon);

struct RamificationResidual {
    double eta_abs = 0.0;         // |eta| at the sample, mantissa level
    double eta_scale = 0.0;       // cancellation mass for eta
    double dgamma_det_abs = 0.0;  // |det| of the finite-difference Gauss map differential
};

// Central differences of the Gauss map along the tangent basis, each
// displaced point re-projected onto the divisor by one Newton step, with one
// Richardson refinement at step/2. Supported for n = 2 and 3.
RamificationResidual gauss_ramification_residual(const DivisorSample& sample,
                                                 const SiegelMatrix& tau, double step,
                                                 double epsilon);

}  // namespace thetadiv
