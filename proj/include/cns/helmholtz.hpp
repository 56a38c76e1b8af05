#pragma once

#include "cns/operators.hpp"

namespace cns {

/// u = grad phi + perp grad A with perp grad A = (-d2 A, d1 A).
///
/// Computed in the trigonometric bases compatible with n.u = 0: u1 in
/// sin(k pi x1) cos(l pi x2), u2 in cos(k pi x1) sin(l pi x2), phi in cosines
/// (Neumann, mean zero) and A in sines (zero on the boundary). Both Poisson
/// problems are diagonal there, so the decomposition of the nodal
/// interpolant is exact up to rounding and the two parts are orthogonal in
/// the trapezoidal L2 product. Where the tangential component has a nonzero
/// normal derivative on the boundary the cosine series converge slowly, and
/// derivatives of the parts oscillate near the edges.
struct HelmholtzParts {
    ScalarField phi;
    ScalarField A;
    VectorField grad_phi;
    VectorField perp_grad_A;
    double reconstruction_error = 0.0; ///< ||u - grad phi - perp grad A||_L2
};

/// Throws ContractViolation when |n.u| exceeds normal_tol on the boundary.
HelmholtzParts decompose(const VectorField& u, double normal_tol = 1e-8);

/// Trapezoidal L2 inner product of two vector fields.
double l2_inner(const VectorField& a, const VectorField& b);

/// u.tau on each closed edge.
EdgeField tangential_trace(const VectorField& u);

/// Solves d1 alpha - mu Lap alpha = source in the interior with alpha equal
/// to `dirichlet` on the boundary (corners take the mean of their two edges).
/// Second-order central differences.
ScalarField solve_vorticity_problem(const ScalarField& source, const EdgeField& dirichlet,
                                    double mu);

/// The vorticity problem of the slip system: source rot F_rhs and boundary
/// value -(f/mu) u.tau + B/mu.
ScalarField vorticity_solve(const VectorField& F_rhs, const EdgeField& u_tangential,
                            const EdgeField& B, const PhysicalParams& params);

} // namespace cns
