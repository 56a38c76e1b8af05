#pragma once

#include "cns/operators.hpp"

#include <string>

namespace cns {

/// Analytic boundary-data perturbations of amplitude delta around the
/// constant flow. Profiles:
///   rho_profile: "sine" (rho_in - 1 = delta sin(pi x2)), "constant", "none"
///   d_profile:   "outflow_bump" (d - n^1 = 16 delta x2^2 (1 - x2)^2 on the
///                outflow edge), "outflow_parabola" (delta x2 (1 - x2) there),
///                "inflow_parabola" (same on the inflow edge), "none".
///                The parabolas have a nonzero slope at the corners, where
///                the slip condition on the adjacent wall forces zero shear;
///                the resulting corner singularity degrades convergence.
///   b_profile:   "sine" (b - f tau^1 = delta sin(pi s) on every edge, s the
///                tangential coordinate), "walls_sine" (walls only), "none"
struct DataSpec {
    double delta = 0.0;
    std::string rho_profile = "sine";
    std::string d_profile = "outflow_bump";
    std::string b_profile = "sine";
};

/// Throws ConfigError on an unknown profile name or negative delta.
void validate(const DataSpec& spec);

BoundaryData make_boundary_data(const Grid& grid, const PhysicalParams& params,
                                const DataSpec& spec);

} // namespace cns
