#pragma once

#include "cns/linear_core.hpp"

namespace cns {

/// Manufactured solution of the constant-coefficient linear system:
///   u* = a (sin(pi x1) cos(pi x2), -cos(pi x1) sin(pi x2) / 2)
///   w* = a x1^2 (1 - 2 x1 / 3) (2 + cos(pi x2))
/// which satisfies n.u* = 0, w* = 0 on the inflow edge and dw*/dn = 0 on the
/// rest of the boundary. F, G and B are computed from exact derivatives.
struct LinearManufactured {
    LinearState exact;
    VectorField F;
    ScalarField G;
    EdgeField B;
};

LinearManufactured linear_manufactured(const Grid& grid, const PhysicalParams& params, double eps,
                                       double amplitude);

/// Manufactured flow of the full nonlinear system with a body force:
///   rho v = (1 - a pi x1^2 cos(pi x2), 2 a x1 sin(pi x2))   (divergence free)
///   rho   = 1 + a (x1^2 (1 - 2 x1 / 3) + 1/2) (2 + cos(pi x2))
/// v is tangent to the walls and the density has zero normal derivative off
/// the inflow edge. Boundary data b, d, rho_in and the body force are derived
/// from exact derivatives.
struct FlowManufactured {
    VectorField v;
    ScalarField rho;
    BoundaryData data;
    VectorField body_force;
};

FlowManufactured flow_manufactured(const Grid& grid, const PhysicalParams& params, double amplitude);

} // namespace cns
