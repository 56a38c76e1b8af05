#pragma once

#include "cns/linear_core.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cns {

/// Geometric schedule first, first*ratio, ... down to last (inclusive).
std::vector<double> geometric_schedule(double first, double last, double ratio);
std::vector<double> default_eps_schedule();

struct SolveConfig {
    int n = 32;
    std::vector<double> eps_schedule = default_eps_schedule();
    double outer_tol = 1e-9;
    int max_outer = 100;
    double inner_tol = 1e-11;
    int max_inner = 200;
    double ball_radius = 1.0;    ///< iterates must stay in this W2p x W1p ball
    double smallness_cap = 2.0;  ///< cap on linearization points
    double extension_cap = 0.5;  ///< cap on ||u0||_W2p + ||w0||_W1p
    double damping = 1.0;        ///< initial Picard damping
    double rho_min = 0.5;
    TransportScheme scheme = TransportScheme::Upwind;

    /// Throws ConfigError naming the first violated constraint.
    void validate() const;
};

/// Grid, parameters, data and the eps-independent pieces derived from them.
struct ProblemSetup {
    Grid grid;
    PhysicalParams params;
    BoundaryData data;
    Extensions ext;
    EdgeField B;
};

ProblemSetup prepare_problem(const SolveConfig& config, const PhysicalParams& params,
                             const BoundaryData& data);

/// Regularized problem at one eps.
RegularizedProblem regularized_problem(const ProblemSetup& setup, const SolveConfig& config,
                                       double eps);

struct ConvergenceRecord {
    double eps = 0.0;
    int outer_iter = 0;
    double increment = 0.0;
    double u_w2p = 0.0;
    double w_w1p = 0.0;
    double residual = 0.0;
};

struct RegularizedSolution {
    LinearState state;
    double eps = 0.0;
    int iterations = 0;
    double residual = 0.0; ///< residual of the regularized nonlinear system
    std::vector<ConvergenceRecord> history;
};

/// Iterates (u, w) <- T_eps(u, w) from `start` (zero when absent) until the
/// W2p x W1p increment is below outer_tol. Throws BallEscape when an iterate
/// leaves the ball and OuterNoConvergence after max_outer steps.
RegularizedSolution solve_regularized(double eps, const SolveConfig& config,
                                      const ProblemSetup& setup,
                                      const LinearState* start = nullptr);

struct EpsGap {
    double eps = 0.0;
    double gap = 0.0;   ///< ||u_k - u_{k-1}||_W2p + ||w_k - w_{k-1}||_W1p
    double w_gap = 0.0; ///< W1p part alone
};

struct FlowSolution {
    VectorField v;
    ScalarField rho;
    LinearState perturbation;
    double u_w2p = 0.0;
    double w_w1p = 0.0;
    double mass_flux_defect = 0.0;
    double limit_residual = 0.0; ///< residual of the eps-free system
    double final_eps = 0.0;
    std::vector<ConvergenceRecord> history;
    std::vector<EpsGap> gaps;
    std::vector<RegularizedSolution> stages;
};

/// Runs solve_regularized along the schedule with warm starts and stops once
/// two consecutive stages differ by at most 10 outer_tol. Throws
/// ContinuationStalled (history = gap table) if the schedule runs out.
FlowSolution continue_to_zero(const SolveConfig& config, const ProblemSetup& setup,
                              const LinearState* start = nullptr);

/// Residual of the eps-free nonlinear system over every row: momentum, slip,
/// n.u = 0, the inflow condition, and the mass equation at all other nodes
/// (at eps = 0 the boundary mass rows reduce to the transport equation).
/// max |row| / max(1, max |rhs|).
double limit_residual(const LinearState& s, const SolveConfig& config, const ProblemSetup& setup);

/// |sum over edges of int rho v.n| with trapezoid weights.
double mass_flux_defect(const VectorField& v, const ScalarField& rho);

/// sqrt(||u - u'||_H1^2 + ||w - w'||_L2^2).
double h1_l2_distance(const LinearState& a, const LinearState& b);

struct StartOutcome {
    std::uint64_t seed = 0;
    double start_norm = 0.0;
    std::string status; ///< "converged" or the error kind
    std::string message;
    std::optional<LinearState> solution;
};

struct UniquenessReport {
    std::vector<StartOutcome> starts;
    double max_distance = 0.0; ///< over converged runs (and the reference)
    int converged = 0;
};

/// Smooth random perturbation state with state_norm == target (p = params.p).
LinearState random_start(const Grid& grid, double p, double target, std::uint64_t seed);

/// Reruns continue_to_zero from n_starts random starts of norm
/// start_fraction * ball_radius, concurrently. Failures are recorded.
UniquenessReport uniqueness_probe(const FlowSolution* reference, const SolveConfig& config,
                                  const ProblemSetup& setup, int n_starts, std::uint64_t seed,
                                  double start_fraction = 0.1);

} // namespace cns
