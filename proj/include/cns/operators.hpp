#pragma once

#include "cns/fields.hpp"
#include "cns/stencil.hpp"

#include <optional>
#include <vector>

namespace cns {

struct PhysicalParams {
    double mu = 1.0;
    double nu = 0.0;
    double gamma = 1.4;
    double f = 10.0; ///< wall friction coefficient
    double p = 4.0;  ///< Sobolev exponent
    std::optional<VectorField> body_force;

    /// Throws ConfigError naming the first violated bound.
    void validate() const;
};

/// Boundary data of the full problem: slip datum b and normal velocity d on
/// each closed edge, and the inflow density (indexed like the Inflow edge).
struct BoundaryData {
    EdgeField b;
    EdgeField d;
    std::vector<double> rho_in;

    /// Data of the constant flow (1,0), rho = 1: b = f tau^1, d = n^1, rho_in = 1.
    static BoundaryData constant_flow(const Grid& grid, const PhysicalParams& params);

    EdgeField b_perturbation(const PhysicalParams& params) const; ///< b - f tau^1
    EdgeField d_perturbation() const;                             ///< d - n^1
    std::vector<double> rho_perturbation() const;                 ///< rho_in - 1

    /// Throws ConfigError if d is nonzero on a wall or sizes mismatch.
    void validate(const Grid& grid) const;
};

ScalarField differentiate(const ScalarField& f, Deriv d);
VectorField grad(const ScalarField& f);
ScalarField div(const VectorField& u);
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& u);
/// d(u2)/dx1 - d(u1)/dx2.
ScalarField rot2d(const VectorField& u);
/// grad(div u) with direct second-derivative stencils.
VectorField grad_div(const VectorField& u);
/// a . grad f
ScalarField convective(const VectorField& a, const ScalarField& f);
/// (a . grad) u, componentwise.
VectorField convective(const VectorField& a, const VectorField& u);

/// Symmetric gradient, one entry per independent component.
struct Deformation {
    ScalarField d11;
    ScalarField d12;
    ScalarField d22;
};

Deformation deformation(const VectorField& u);

/// n . 2 mu D(u) . tau + f u . tau on every edge node.
EdgeField slip_operator(const VectorField& u, const PhysicalParams& params);
/// slip_operator(u) - B.
EdgeField stress_residual_slip(const VectorField& u, const PhysicalParams& params,
                               const EdgeField& B);
/// n . 2 mu D(u) . tau alone.
EdgeField normal_shear(const VectorField& u, const PhysicalParams& params);

struct Extensions {
    VectorField u0;
    ScalarField w0;
    double u0_w2p = 0.0;
    double w0_w1p = 0.0;
};

/// Discrete harmonic extensions of the perturbation data: u0 with Dirichlet
/// value (d - n^1) n on the inflow and outflow edges and, on the walls, zero
/// normal part and a tangential part interpolated linearly between the
/// corner values; w0 with Dirichlet value rho_in - 1 on
/// the inflow edge and zero normal derivative elsewhere. Throws
/// SmallnessViolation if ||u0||_{W2p} + ||w0||_{W1p} exceeds cap.
Extensions build_extensions(const BoundaryData& data, const Grid& grid,
                            const PhysicalParams& params, double cap);

/// Number of averaging sweeps used by mollify: min(N, floor(eps / h^2)).
int mollify_sweeps(const Grid& grid, double eps);

/// Iterated (4 f + neighbours) / 8 averaging with mirrored edges. Nodes with
/// pinned[node] == true keep their value.
ScalarField mollify(const ScalarField& f, double eps, const std::vector<bool>& pinned = {});
VectorField mollify(const VectorField& f, double eps, const std::vector<bool>& pinned = {});

/// Extensions smoothed for a given eps: u0 pinned on the whole boundary,
/// w0 pinned on the inflow edge.
Extensions mollify_extensions(const Extensions& ext, double eps);

/// Pointwise coefficients of the linearization around w_bar.
struct Coefficients {
    ScalarField rho; ///< w_bar + w0 + 1
    ScalarField a0;  ///< gamma rho^gamma / (nu + 2 mu)
    ScalarField a1;  ///< gamma rho^(gamma-1)
    ScalarField a2;  ///< gamma rho^(gamma-2)
};

/// Throws DensityFloor if rho < rho_min at some node.
Coefficients coefficients(const ScalarField& w_bar, const ScalarField& w0,
                          const PhysicalParams& params, double rho_min = 0.5);

struct Forcing {
    VectorField F;
    ScalarField G;
};

/// Nonlinear right-hand sides of the perturbation system evaluated at
/// (u_bar, w_bar) with extensions (u0, w0): everything except the linear
/// operator and the terms -(a1 - gamma) grad w, -(w_bar + w0) div u and
/// -(u_bar + u0) . grad w, which depend on the unknown.
Forcing assemble_F_G(const VectorField& u_bar, const ScalarField& w_bar, const VectorField& u0,
                     const ScalarField& w0, const PhysicalParams& params,
                     double rho_min = 0.5);

/// Slip datum of the perturbation: b - 2 mu n.D(u0).tau - f tau^1 - f u0.tau.
EdgeField slip_datum(const BoundaryData& data, const VectorField& u0,
                     const PhysicalParams& params);

/// Mask of nodes on the given sides (corners included).
std::vector<bool> boundary_mask(const Grid& grid, std::initializer_list<Side> sides);

} // namespace cns
