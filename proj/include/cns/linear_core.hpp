#pragma once

#include "cns/norms.hpp"
#include "cns/operators.hpp"
#include "cns/sparse.hpp"

#include <iosfwd>
#include <memory>
#include <mutex>

namespace cns {

/// Discretization of d/dx1 w in the mass equation of the linear operator.
/// Upwind is the second-order backward difference; Centered is the plain
/// central difference (prone to odd-even oscillation at small eps).
enum class TransportScheme { Upwind, Centered };

struct LinearState {
    VectorField u;
    ScalarField w;

    explicit LinearState(const Grid& g) : u(g), w(g) {}
    LinearState(VectorField u_, ScalarField w_) : u(std::move(u_)), w(std::move(w_)) {}
};

struct LinearSolveReport {
    double residual = 0.0;     ///< system residual of the returned state
    int iterations = 0;        ///< Picard steps (1 for a direct solve)
    double damping = 1.0;      ///< final damping factor
    std::vector<double> increments;
    NormReport u_norms;
    NormReport w_norms;
};

/// Unknown (u1, u2, w) of node k sits at 3k, 3k+1, 3k+2.
inline int unknown(std::size_t node, int comp) { return 3 * static_cast<int>(node) + comp; }

Eigen::VectorXd pack(const LinearState& s);
LinearState unpack(const Grid& g, const Eigen::VectorXd& x);

/// Sum of ||u||_{W2p} and ||w||_{W1p}, the norm of every iteration in the solver.
double state_norm(const VectorField& u, const ScalarField& w, double p);
double state_norm(const LinearState& s, double p);

/// Matrix of the constant-coefficient linearized system
///   d/dx1 u - mu Lap u - (nu+mu) grad div u + gamma grad w = F
///   div u + d/dx1 w - eps Lap w = G
/// with n.u = 0 and the slip condition on every edge, w = 0 on the inflow
/// edge and dw/dn = 0 elsewhere. The Neumann condition is imposed by a
/// mirrored ghost node: off the inflow edge the density row is the mass
/// equation on the boundary node with a reflected eps-Laplacian. Corners pin
/// u = 0. The LU factors are computed on the first solve and shared by copies.
class ConstCoeffOperator {
public:
    ConstCoeffOperator(const Grid& grid, const PhysicalParams& params, double eps,
                       TransportScheme scheme = TransportScheme::Upwind);

    const Grid& grid() const noexcept { return grid_; }
    const PhysicalParams& params() const noexcept { return params_; }
    double eps() const noexcept { return eps_; }
    TransportScheme scheme() const noexcept { return scheme_; }
    const SparseMatrix& matrix() const noexcept { return shared_->matrix; }

    Eigen::VectorXd rhs(const VectorField& F, const ScalarField& G, const EdgeField& B) const;
    LinearState solve(const VectorField& F, const ScalarField& G, const EdgeField& B) const;

    /// max |A x - b| / max(1, max |b|).
    double residual(const LinearState& s, const VectorField& F, const ScalarField& G,
                    const EdgeField& B) const;
    /// A x - b, one entry per row.
    Eigen::VectorXd residual_vector(const LinearState& s, const VectorField& F,
                                    const ScalarField& G, const EdgeField& B) const;

    /// Coordinate-format dump: one "row col value" line per stored entry.
    void dump_matrix(std::ostream& os) const;

private:
    Grid grid_;
    PhysicalParams params_;
    double eps_;
    TransportScheme scheme_;

    // The factorization is built on the first solve and shared by copies.
    struct Shared {
        SparseMatrix matrix;
        std::once_flag once;
        std::unique_ptr<SparseSolver> solver;
    };
    std::shared_ptr<Shared> shared_;

    const SparseSolver& solver() const;
};

/// Convenience wrapper; eps must be positive.
LinearState solve_const_coeff(const VectorField& F, const ScalarField& G, const EdgeField& B,
                              double eps, const PhysicalParams& params,
                              TransportScheme scheme = TransportScheme::Upwind);

/// Everything the regularized problem needs besides the unknowns: the
/// operator for the current eps, raw and mollified extensions and the slip
/// datum.
struct RegularizedProblem {
    ConstCoeffOperator op;
    Extensions ext;     ///< extensions used in coefficients
    Extensions ext_eps; ///< mollified extensions used in F_eps, G_eps
    EdgeField B;
    double rho_min = 0.5;
    double smallness_cap = 2.0;

    RegularizedProblem(ConstCoeffOperator op_, Extensions ext_, EdgeField B_,
                       double rho_min_ = 0.5, double smallness_cap_ = 2.0);
};

/// Linearization of the nonlinear system around (u_bar, w_bar).
class Linearization {
public:
    /// Throws SmallnessViolation if ||u_bar||_{W2p} + ||w_bar||_{W1p}
    /// exceeds the problem's cap, DensityFloor if the density drops below
    /// rho_min.
    Linearization(const RegularizedProblem& problem, const VectorField& u_bar,
                  const ScalarField& w_bar);

    const RegularizedProblem& problem() const noexcept { return *problem_; }
    const Forcing& forcing_eps() const noexcept { return forcing_; }
    const Coefficients& coefficients() const noexcept { return coef_; }
    const VectorField& u_bar() const noexcept { return u_bar_; }
    const ScalarField& w_bar() const noexcept { return w_bar_; }
    /// u_bar + u0, the transport velocity of the density perturbation.
    const VectorField& transport_velocity() const noexcept { return drift_; }

    /// F^eps = -(a1 - gamma) grad w + F_eps, G^eps = -(w_bar + w0) div u
    /// - (u_bar + u0).grad w + G_eps, both scaled by lambda.
    Forcing modified_forcing(const VectorField& u, const ScalarField& w, double lambda = 1.0) const;

    /// One application of S^eps, scaled by lambda.
    LinearState apply_S(const LinearState& tilde, double lambda = 1.0) const;

    /// Residual of the variable-coefficient system at (u, w).
    double residual(const LinearState& s, double lambda = 1.0) const;

private:
    const RegularizedProblem* problem_;
    VectorField u_bar_;
    ScalarField w_bar_;
    Coefficients coef_;
    Forcing forcing_;
    VectorField drift_;
    ScalarField excess_;
};

struct PicardOptions {
    double inner_tol = 1e-11;
    int max_inner = 200;
    double damping = 1.0;
    double lambda = 1.0;
};

/// Solution of the variable-coefficient system around (u_bar, w_bar) by
/// damped Picard iteration on S^eps from zero. Throws InnerNoConvergence
/// with the contraction-ratio history when max_inner is exceeded.
LinearState apply_T(const RegularizedProblem& problem, const VectorField& u_bar,
                    const ScalarField& w_bar, const PicardOptions& options,
                    LinearSolveReport* report = nullptr);

/// Discrete weak-form value B[(u,w),(u,w)] of the constant-coefficient
/// system with trapezoid quadrature:
///   int u.d1u + 2mu D(u):grad u + nu div^2 u + gamma w d1w + gamma eps |grad w|^2
///   + int_Gamma f (u.tau)^2.
double bilinear_form_value(const VectorField& u, const ScalarField& w, double eps,
                           const PhysicalParams& params);

/// int 2 mu D:D + nu div^2 u (trapezoid).
double korn_form(const VectorField& u, const PhysicalParams& params);

/// Trapezoid integral over the square.
double integrate(const ScalarField& f);
/// Trapezoid integral over one edge of the values in `edge` order.
double integrate_edge(const Grid& g, const std::vector<double>& values);

} // namespace cns
