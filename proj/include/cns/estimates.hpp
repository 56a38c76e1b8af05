#pragma once

#include "cns/data.hpp"
#include "cns/fixed_point.hpp"
#include "cns/linear_core.hpp"
#include "cns/sparse.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cns {

/// One checked inequality lhs <= constant * core.
///
/// rhs = constant * core and implied_constant = lhs / core (0 when both
/// vanish). pass requires the precondition and lhs <= rhs, so raising the
/// constant never turns a pass into a failure.
struct EstimateReport {
    std::string name;
    double lhs = 0.0;
    double core = 0.0;
    double constant = 0.0;
    double rhs = 0.0;
    double implied_constant = 0.0;
    bool precondition_ok = true;
    bool pass = false;
    int n = 0;
    double eps = 0.0;
    std::string note;
    std::vector<std::pair<std::string, double>> diagnostics;

    /// Value of a named diagnostic; throws ContractViolation when absent.
    double diagnostic(const std::string& key) const;
};

EstimateReport make_report(std::string name, double lhs, double core, double constant, int n,
                           double eps);

// Korn inequality -----------------------------------------------------------

/// Reduced pencil of the Korn form on bilinear elements over
/// V = {u : n.u = 0 on the boundary}. stiffness is int 2 mu D:D + nu div^2
/// (plus int_Gamma (f + n1/2)|u|^2 when friction is on), gram the W^1_2
/// inner product. free_dofs maps reduced indices to 2*node + component.
struct KornPencil {
    SparseMatrix stiffness;
    SparseMatrix gram;
    std::vector<int> free_dofs;
};

KornPencil korn_pencil(const Grid& grid, const PhysicalParams& params, bool friction = true);

/// Value of the pencil's stiffness form at the bilinear interpolant of u
/// (u is restricted to the free dofs, so n.u should vanish).
double korn_form_value(const VectorField& u, const PhysicalParams& params, bool friction = true);

struct KornResult {
    double constant = 0.0; ///< smallest generalized Rayleigh quotient
    int iterations = 0;
    Eigen::VectorXd mode;  ///< reduced eigenvector, gram-normalized
};

/// Inverse power iteration on the pencil; NumericError on stagnation.
KornResult korn_constant(const Grid& grid, const PhysicalParams& params, bool friction = true,
                         double tol = 1e-12, int max_iter = 5000);

// Linearized system and its verifiers --------------------------------------

/// Everything defining one linearized system: the linearization point, the
/// raw extensions entering coefficients and drift, the assembled data
/// (F, G already contain the mollified extension terms) and the discretization.
struct LinearizedData {
    VectorField u_bar;
    ScalarField w_bar;
    VectorField u0;
    ScalarField w0;
    VectorField F;
    ScalarField G;
    EdgeField B;
    double eps = 0.0;
    PhysicalParams params;
    TransportScheme scheme = TransportScheme::Upwind;
    double rho_min = 0.5;
};

LinearizedData linearized_data(const Linearization& lin);

/// Residual of the variable-coefficient system, re-derived from the
/// equations (momentum with a1 grad w, mass with rho div u and the drift,
/// slip, n.u = 0, corner and inflow conditions):
/// max |row| / max(1, max |rhs|).
double linearized_residual(const LinearizedData& d, const LinearState& s);

/// Data smallness E = ||u_bar||_W2p + ||w_bar||_W1p + ||u0||_W2p + ||w0||_W1p.
double smallness_measure(const LinearizedData& d);

/// ||u||_W12 + ||w||_L2 <= C [||F||_L2 + ||G||_L2 + ||B||_L2(Gamma) + E ||w||_W1p].
/// Diagnostics: the telescoped integrals S1 and S2 of w^2 along x1, the
/// telescoping defect, the outflow term eps int w^2 n1 and the residual.
EstimateReport verify_energy_estimate(const LinearizedData& d, const LinearState& s,
                                      double constant = 100.0, double residual_tol = 1e-8);

/// H_bar = -(nu + 2 mu) div u + a1 w, H_tilde = H_bar rho / (nu + 2 mu) + G,
/// H = H_bar / (nu + 2 mu) + G. Checks the transport equation
/// a0 w + w_x1 + (u_bar + u0).grad w - eps Lap w = H_tilde nodally and the
/// bound ||w||_W1p + ||w_x1||_Lp(inflow) <= C [||H||_W1p + ||H||_Lp(inflow)].
EstimateReport verify_transport_reduction(const LinearizedData& d, const LinearState& s,
                                          double constant = 100.0, double identity_tol = 1e-8);

struct TransportPieces {
    ScalarField h_bar;
    ScalarField h_tilde;
    ScalarField h;
    ScalarField identity_residual; ///< zero on the inflow edge
};

TransportPieces transport_pieces(const LinearizedData& d, const LinearState& s);

/// Master estimate ||u||_W2p + ||w||_W1p <= C [||F||_Lp + ||G||_W1p + ||B||]
/// (first entry) and the gradient bound
/// ||grad H_bar||_Lp <= C [||F_eps||_Lp + ||B|| + ||u||_W^{1-1/p}_p(Gamma)] + E ||w||_W1p
/// (second entry). The Helmholtz potentials of u and the vorticity alpha
/// are reported as diagnostics of the second entry.
std::vector<EstimateReport> verify_apriori(const LinearizedData& d, const LinearState& s,
                                           double constant = 100.0);

// Interpolation -------------------------------------------------------------

/// Smooth random field: cosine modes up to `modes` with decaying amplitudes.
ScalarField random_smooth_field(const Grid& grid, std::uint64_t seed, int modes = 4);

/// For each eps: the smallest C with ||g||_Lp <= eps ||grad g||_Lp + C ||g||_L2
/// ("int1") and ||g||_W^{1/p+eta}_p <= eps ||g||_W1p + C ||g||_Lp ("int2"),
/// over g = f and n_random seeded random smooth fields. Each report's
/// implied_constant is the measured C; pass means C <= constant.
std::vector<EstimateReport> verify_interpolation(const ScalarField& f, double p,
                                                 const std::vector<double>& epsilons,
                                                 std::uint64_t seed = 1, int n_random = 100,
                                                 double eta = 0.1, double constant = 1e3);

// Sweep ---------------------------------------------------------------------

/// Solves the regularized problem at each (N, eps) pair concurrently and
/// runs the energy, transport and a-priori verifiers at the fixed point. A
/// pair whose solve fails yields a single failed report named "solve".
std::vector<EstimateReport> estimate_sweep(const SolveConfig& base, const PhysicalParams& params,
                                           const DataSpec& data, const std::vector<int>& ns,
                                           const std::vector<double>& epsilons,
                                           double constant = 100.0);

/// max / min of implied constants of reports named `name` at grid size n.
double constant_spread(const std::vector<EstimateReport>& reports, const std::string& name, int n);

} // namespace cns
