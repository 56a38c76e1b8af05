#include "cns/estimates.hpp"

#include "cns/errors.hpp"
#include "cns/helmholtz.hpp"
#include "cns/norms.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <random>

namespace cns {

double EstimateReport::diagnostic(const std::string& key) const {
    for (const auto& [k, v] : diagnostics)
        if (k == key) return v;
    throw ContractViolation("report '" + name + "' has no diagnostic '" + key + "'");
}

EstimateReport make_report(std::string name, double lhs, double core, double constant, int n,
                           double eps) {
    EstimateReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.core = core;
    r.constant = constant;
    r.rhs = constant * core;
    if (core > 0.0)
        r.implied_constant = lhs / core;
    else
        r.implied_constant = lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    r.pass = std::isfinite(lhs) && lhs <= r.rhs;
    r.n = n;
    r.eps = eps;
    return r;
}

// Korn ----------------------------------------------------------------------

namespace {

int dof(std::size_t node, int comp) { return 2 * static_cast<int>(node) + comp; }

bool constrained(const Grid& g, int i, int j, int comp) {
    return comp == 0 ? (i == 0 || i == g.n()) : (j == 0 || j == g.n());
}

} // namespace

KornPencil korn_pencil(const Grid& g, const PhysicalParams& params, bool friction) {
    params.validate();
    const int n = g.n();
    const double h = g.h();
    std::vector<int> reduced(2 * g.node_count(), -1);
    KornPencil out;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            for (int c = 0; c < 2; ++c)
                if (!constrained(g, i, j, c)) {
                    reduced[static_cast<std::size_t>(dof(g.index(i, j), c))] =
                        static_cast<int>(out.free_dofs.size());
                    out.free_dofs.push_back(dof(g.index(i, j), c));
                }

    // Bilinear element on [0,1]^2 reference coordinates, corners ordered
    // (0,0), (1,0), (0,1), (1,1); 2x2 Gauss quadrature is exact here.
    const double mu = params.mu, nu = params.nu;
    const double gp[2] = {0.5 - 0.5 / std::sqrt(3.0), 0.5 + 0.5 / std::sqrt(3.0)};
    Eigen::Matrix<double, 8, 8> ke = Eigen::Matrix<double, 8, 8>::Zero();
    Eigen::Matrix<double, 8, 8> me = Eigen::Matrix<double, 8, 8>::Zero();
    for (double xi : gp)
        for (double eta : gp) {
            const std::array<double, 4> N{(1 - xi) * (1 - eta), xi * (1 - eta), (1 - xi) * eta, xi * eta};
            const std::array<double, 4> dx{-(1 - eta) / h, (1 - eta) / h, -eta / h, eta / h};
            const std::array<double, 4> dy{-(1 - xi) / h, -xi / h, (1 - xi) / h, xi / h};
            // Strain rows e11, e22, 2 e12 over dofs (node a, comp c) -> 2a+c.
            Eigen::Matrix<double, 3, 8> B = Eigen::Matrix<double, 3, 8>::Zero();
            for (int a = 0; a < 4; ++a) {
                B(0, 2 * a) = dx[a];
                B(1, 2 * a + 1) = dy[a];
                B(2, 2 * a) = dy[a];
                B(2, 2 * a + 1) = dx[a];
            }
            Eigen::Matrix3d D;
            D << 2 * mu + nu, nu, 0, nu, 2 * mu + nu, 0, 0, 0, mu;
            const double wq = 0.25 * h * h;
            ke += wq * B.transpose() * D * B;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    const double m = wq * (N[a] * N[b] + dx[a] * dx[b] + dy[a] * dy[b]);
                    me(2 * a, 2 * b) += m;
                    me(2 * a + 1, 2 * b + 1) += m;
                }
        }

    Triplets tk, tm;
    auto scatter = [&](const std::array<std::size_t, 4>& nodes, int la, int lb, double kv, double mv) {
        const int ra = reduced[static_cast<std::size_t>(dof(nodes[static_cast<std::size_t>(la / 2)], la % 2))];
        const int rb = reduced[static_cast<std::size_t>(dof(nodes[static_cast<std::size_t>(lb / 2)], lb % 2))];
        if (ra < 0 || rb < 0) return;
        if (kv != 0.0) tk.emplace_back(ra, rb, kv);
        if (mv != 0.0) tm.emplace_back(ra, rb, mv);
    };
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const std::array<std::size_t, 4> nodes{g.index(i, j), g.index(i + 1, j), g.index(i, j + 1),
                                                   g.index(i + 1, j + 1)};
            for (int a = 0; a < 8; ++a)
                for (int b = 0; b < 8; ++b) scatter(nodes, a, b, ke(a, b), me(a, b));
        }
    if (friction) {
        // int_Gamma (f + n1/2) |u|^2 with the exact linear-edge mass matrix.
        for (Side s : all_sides) {
            const BoundarySegment& seg = g.segment(s);
            const double coef = params.f + 0.5 * seg.normal.x1;
            for (std::size_t k = 0; k + 1 < seg.nodes.size(); ++k) {
                const std::array<std::size_t, 2> e{seg.nodes[k], seg.nodes[k + 1]};
                for (int c = 0; c < 2; ++c)
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b) {
                            const int ra = reduced[static_cast<std::size_t>(dof(e[static_cast<std::size_t>(a)], c))];
                            const int rb = reduced[static_cast<std::size_t>(dof(e[static_cast<std::size_t>(b)], c))];
                            if (ra < 0 || rb < 0) continue;
                            tk.emplace_back(ra, rb, coef * h * (a == b ? 2.0 : 1.0) / 6.0);
                        }
            }
        }
    }
    const int m = static_cast<int>(out.free_dofs.size());
    out.stiffness = build_matrix(m, m, tk);
    out.gram = build_matrix(m, m, tm);
    return out;
}

double korn_form_value(const VectorField& u, const PhysicalParams& params, bool friction) {
    const KornPencil pencil = korn_pencil(u.grid(), params, friction);
    Eigen::VectorXd x(static_cast<Eigen::Index>(pencil.free_dofs.size()));
    for (std::size_t k = 0; k < pencil.free_dofs.size(); ++k) {
        const int d = pencil.free_dofs[k];
        x[static_cast<Eigen::Index>(k)] = u[d % 2][static_cast<std::size_t>(d / 2)];
    }
    return x.dot(pencil.stiffness * x);
}

KornResult korn_constant(const Grid& grid, const PhysicalParams& params, bool friction, double tol,
                         int max_iter) {
    const KornPencil pencil = korn_pencil(grid, params, friction);
    Eigen::SimplicialLDLT<SparseMatrix> ldlt(pencil.stiffness);
    if (ldlt.info() != Eigen::Success) throw NumericError("Korn stiffness factorization failed");
    const Eigen::Index m = pencil.stiffness.rows();
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unif(0.5, 1.5);
    Eigen::VectorXd x(m);
    for (Eigen::Index k = 0; k < m; ++k) x[k] = unif(rng);
    x /= std::sqrt(x.dot(pencil.gram * x));
    KornResult r;
    double prev = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= max_iter; ++it) {
        Eigen::VectorXd y = ldlt.solve(pencil.gram * x);
        const double my = y.dot(pencil.gram * y);
        const double lambda = y.dot(pencil.stiffness * y) / my;
        if (!std::isfinite(lambda)) throw NumericError("non-finite Rayleigh quotient in the Korn iteration");
        x = y / std::sqrt(my);
        if (std::abs(lambda - prev) <= tol * lambda) {
            r.constant = lambda;
            r.iterations = it;
            r.mode = std::move(x);
            return r;
        }
        prev = lambda;
    }
    throw NumericError("Korn inverse iteration stagnated after " + std::to_string(max_iter) +
                       " steps");
}

// Linearized system ---------------------------------------------------------

LinearizedData linearized_data(const Linearization& lin) {
    const RegularizedProblem& pr = lin.problem();
    return LinearizedData{lin.u_bar(),
                          lin.w_bar(),
                          pr.ext.u0,
                          pr.ext.w0,
                          lin.forcing_eps().F,
                          lin.forcing_eps().G,
                          pr.B,
                          pr.op.eps(),
                          pr.op.params(),
                          pr.op.scheme(),
                          pr.rho_min};
}

namespace {

struct Derived {
    Coefficients coef;
    VectorField drift;
    ScalarField transport;  ///< scheme's x1-derivative of w
    ScalarField drift_grad; ///< (u_bar + u0).grad w
    ScalarField lap_w;      ///< mirrored Laplacian of w
    ScalarField div_u;
};

Derived derive(const LinearizedData& d, const LinearState& s) {
    const Deriv t = d.scheme == TransportScheme::Upwind ? Deriv::D1Upwind : Deriv::D1;
    VectorField drift = d.u_bar + d.u0;
    ScalarField dg = convective(drift, s.w);
    return Derived{coefficients(d.w_bar, d.w0, d.params, d.rho_min),
                   std::move(drift),
                   differentiate(s.w, t),
                   std::move(dg),
                   differentiate(s.w, Deriv::D11Mirror) + differentiate(s.w, Deriv::D22Mirror),
                   div(s.u)};
}

double sup(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

double sup(const VectorField& f) { return std::max(sup(f[0]), sup(f[1])); }

double sup(const EdgeField& f) {
    double m = 0.0;
    for (Side s : all_sides)
        for (double v : f[s]) m = std::max(m, std::abs(v));
    return m;
}

// Combined W^{1-1/p}_p stand-in of a vector field over the whole boundary.
double boundary_trace(const VectorField& u, double p) {
    double acc = 0.0;
    for (Side s : all_sides) acc += std::pow(boundary_trace_norm(u, u.grid().segment(s), p).total, p);
    return std::pow(acc, 1.0 / p);
}

} // namespace

double smallness_measure(const LinearizedData& d) {
    const double p = d.params.p;
    return sobolev_norm(d.u_bar, p, 2) + sobolev_norm(d.w_bar, p, 1) + sobolev_norm(d.u0, p, 2) +
           sobolev_norm(d.w0, p, 1);
}

double linearized_residual(const LinearizedData& d, const LinearState& s) {
    const Grid& g = s.w.grid();
    const PhysicalParams& pp = d.params;
    const Derived x = derive(d, s);
    const VectorField a1_grad_w = x.coef.a1 * grad(s.w);
    const VectorField mom = VectorField(differentiate(s.u[0], Deriv::D1), differentiate(s.u[1], Deriv::D1)) -
                            pp.mu * laplacian(s.u) - (pp.nu + pp.mu) * grad_div(s.u) + a1_grad_w - d.F;
    const ScalarField mass = x.coef.rho * x.div_u + x.transport + x.drift_grad - d.eps * x.lap_w - d.G;
    const EdgeField slip = slip_operator(s.u, pp) - d.B;

    double worst = 0.0;
    for (int j = 0; j <= g.n(); ++j)
        for (int i = 0; i <= g.n(); ++i) {
            const std::size_t node = g.index(i, j);
            if (!g.is_boundary(i, j)) {
                worst = std::max({worst, std::abs(mom[0][node]), std::abs(mom[1][node]), std::abs(mass[node])});
                continue;
            }
            worst = std::max(worst, std::abs(i == 0 ? s.w[node] : mass[node]));
            if (g.is_corner(i, j)) {
                worst = std::max({worst, std::abs(s.u[0][node]), std::abs(s.u[1][node])});
                continue;
            }
            const Side side = g.side_of(i, j);
            const BoundarySegment& seg = g.segment(side);
            const std::size_t k = static_cast<std::size_t>(side == Side::Inflow || side == Side::Outflow ? j : i);
            worst = std::max({worst, std::abs(dot(s.u.at(node), seg.normal)), std::abs(slip[side][k])});
        }
    const double scale = std::max({1.0, sup(d.F), sup(d.G), sup(d.B)});
    return worst / scale;
}

EstimateReport verify_energy_estimate(const LinearizedData& d, const LinearState& s, double constant,
                                      double residual_tol) {
    const Grid& g = s.w.grid();
    const double p = d.params.p;
    const double E = smallness_measure(d);
    const double lhs = h1_norm(s.u) + lp_norm(s.w, 2.0);
    const double core = lp_norm(d.F, 2.0) + lp_norm(d.G, 2.0) + boundary_norm(d.B, 2.0).lp +
                        E * sobolev_norm(s.w, p, 1);
    EstimateReport r = make_report("energy", lhs, core, constant, g.n(), d.eps);

    // w^2(x1, x2) - w^2(0, x2) = int_0^x1 2 w w_s ds with w_s taken from the
    // mass equation and split into S1 (data and div u) and S2 (drift and eps).
    const Derived x = derive(d, s);
    const ScalarField s1_density = 2.0 * s.w * (d.G - x.coef.rho * x.div_u);
    const ScalarField s2_density = 2.0 * s.w * (d.eps * x.lap_w - x.drift_grad);
    ScalarField S1(g), S2(g);
    double defect = 0.0, w2max = 0.0;
    for (int j = 0; j <= g.n(); ++j) {
        double a1 = 0.0, a2 = 0.0;
        for (int i = 1; i <= g.n(); ++i) {
            a1 += 0.5 * g.h() * (s1_density(i - 1, j) + s1_density(i, j));
            a2 += 0.5 * g.h() * (s2_density(i - 1, j) + s2_density(i, j));
            S1(i, j) = a1;
            S2(i, j) = a2;
        }
        for (int i = 0; i <= g.n(); ++i) {
            const double w2 = s.w(i, j) * s.w(i, j);
            w2max = std::max(w2max, w2);
            defect = std::max(defect, std::abs(w2 - s.w(0, j) * s.w(0, j) - S1(i, j) - S2(i, j)));
        }
    }
    std::vector<double> w2_out;
    for (std::size_t node : g.segment(Side::Outflow).nodes) w2_out.push_back(s.w[node] * s.w[node]);
    const double residual = linearized_residual(d, s);
    r.diagnostics = {{"S1_integral", integrate(S1)},
                     {"S2_integral", integrate(S2)},
                     {"telescoping_defect", w2max > 0.0 ? defect / w2max : defect},
                     {"eps_outflow_w2", d.eps * integrate_edge(g, w2_out)},
                     {"E", E},
                     {"residual", residual}};
    if (!(residual <= residual_tol)) {
        r.precondition_ok = false;
        r.pass = false;
        r.note = "input is not a solution of the linearized system (residual " + std::to_string(residual) + ")";
    }
    return r;
}

TransportPieces transport_pieces(const LinearizedData& d, const LinearState& s) {
    const Grid& g = s.w.grid();
    const double visc = d.params.nu + 2.0 * d.params.mu;
    const Derived x = derive(d, s);
    ScalarField h_bar = -visc * x.div_u + x.coef.a1 * s.w;
    ScalarField h_tilde = (1.0 / visc) * (h_bar * x.coef.rho) + d.G;
    ScalarField h = (1.0 / visc) * h_bar + d.G;
    ScalarField id = x.coef.a0 * s.w + x.transport + x.drift_grad - d.eps * x.lap_w - h_tilde;
    for (std::size_t node : g.segment(Side::Inflow).nodes) id[node] = 0.0;
    return {std::move(h_bar), std::move(h_tilde), std::move(h), std::move(id)};
}

EstimateReport verify_transport_reduction(const LinearizedData& d, const LinearState& s,
                                          double constant, double identity_tol) {
    const Grid& g = s.w.grid();
    const double p = d.params.p;
    const TransportPieces tp = transport_pieces(d, s);
    const BoundarySegment& inflow = g.segment(Side::Inflow);
    const double wx1_in = boundary_trace_norm(differentiate(s.w, Deriv::D1), inflow, p).lp;
    const double lhs = sobolev_norm(s.w, p, 1) + wx1_in;
    const double core = sobolev_norm(tp.h, p, 1) + boundary_trace_norm(tp.h, inflow, p).lp;
    EstimateReport r = make_report("transport", lhs, core, constant, g.n(), d.eps);
    const double id = sup(tp.identity_residual) / std::max({1.0, sup(tp.h_tilde), sup(d.G)});
    double w_in = 0.0;
    for (std::size_t node : inflow.nodes) w_in = std::max(w_in, std::abs(s.w[node]));
    r.diagnostics = {{"identity_residual", id},
                     {"inflow_w", w_in},
                     {"h_bar_lp", lp_norm(tp.h_bar, p)},
                     {"h_w1p", sobolev_norm(tp.h, p, 1)},
                     {"wx1_inflow_lp", wx1_in}};
    if (!(id <= identity_tol && w_in <= identity_tol)) {
        r.precondition_ok = false;
        r.pass = false;
        r.note = "transport identity fails (residual " + std::to_string(id) + "): input is not a solution";
    }
    return r;
}

std::vector<EstimateReport> verify_apriori(const LinearizedData& d, const LinearState& s,
                                           double constant) {
    const Grid& g = s.w.grid();
    const double p = d.params.p;
    const double b_norm = boundary_norm(d.B, p).total;
    const double lhs = sobolev_norm(s.u, p, 2) + sobolev_norm(s.w, p, 1);
    const double core = lp_norm(d.F, p) + sobolev_norm(d.G, p, 1) + b_norm;
    EstimateReport main = make_report("apriori", lhs, core, constant, g.n(), d.eps);
    main.diagnostics = {{"u_w2p", sobolev_norm(s.u, p, 2)}, {"w_w1p", sobolev_norm(s.w, p, 1)}};

    const TransportPieces tp = transport_pieces(d, s);
    const double E = smallness_measure(d);
    const double lhs2 = lp_norm(grad(tp.h_bar), p);
    const double core2 = lp_norm(d.F, p) + b_norm + boundary_trace(s.u, p) + E * sobolev_norm(s.w, p, 1);
    EstimateReport gh = make_report("grad_h_bar", lhs2, core2, constant, g.n(), d.eps);
    gh.diagnostics = {{"E", E}};
    try {
        const HelmholtzParts parts = decompose(s.u, 1e-6);
        gh.diagnostics.emplace_back("phi_w2p", sobolev_norm(parts.phi, p, 2));
        gh.diagnostics.emplace_back("A_w2p", sobolev_norm(parts.A, p, 2));
        gh.diagnostics.emplace_back("helmholtz_reconstruction", parts.reconstruction_error);
    } catch (const ContractViolation& e) {
        gh.note = std::string("Helmholtz decomposition skipped: ") + e.what();
    }
    ScalarField a1_shift = derive(d, s).coef.a1;
    for (double& v : a1_shift.values()) v -= d.params.gamma;
    const VectorField f_rhs = d.F - a1_shift * grad(s.w);
    const ScalarField alpha = vorticity_solve(f_rhs, tangential_trace(s.u), d.B, d.params);
    gh.diagnostics.emplace_back("alpha_w1p", sobolev_norm(alpha, p, 1));
    return {std::move(main), std::move(gh)};
}

// Interpolation -------------------------------------------------------------

ScalarField random_smooth_field(const Grid& grid, std::uint64_t seed, int modes) {
    using std::numbers::pi;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> a(static_cast<std::size_t>(modes * modes));
    for (double& c : a) c = normal(rng);
    return ScalarField::sample(grid, [&a, modes](double x, double y) {
        double s = 0.0;
        for (int k = 0; k < modes; ++k)
            for (int l = 0; l < modes; ++l)
                s += a[static_cast<std::size_t>(k * modes + l)] * std::cos(k * pi * x) * std::cos(l * pi * y) /
                     (1.0 + k * k + l * l);
        return s;
    });
}

std::vector<EstimateReport> verify_interpolation(const ScalarField& f, double p,
                                                 const std::vector<double>& epsilons,
                                                 std::uint64_t seed, int n_random, double eta,
                                                 double constant) {
    if (!(p >= 2.0)) throw ContractViolation("interpolation check needs p >= 2");
    if (!(eta > 0.0 && 1.0 / p + eta < 1.0)) throw ContractViolation("need 0 < 1/p + eta < 1");
    for (double v : f.values())
        if (!std::isfinite(v)) throw NumericError("non-finite input field");
    struct Norms {
        double lp, grad_lp, l2, w1p, frac;
    };
    auto norms_of = [p, eta](const ScalarField& g) {
        const double lp = lp_norm(g, p);
        return Norms{lp, lp_norm(grad(g), p), lp_norm(g, 2.0), sobolev_norm(g, p, 1),
                     lp + slobodeckij_seminorm(g, 1.0 / p + eta, p)};
    };
    std::vector<Norms> family{norms_of(f)};
    for (int k = 0; k < n_random; ++k)
        family.push_back(norms_of(random_smooth_field(f.grid(), seed + static_cast<std::uint64_t>(k))));

    auto c1 = [](const Norms& m, double eps) {
        return m.l2 > 0.0 ? std::max(0.0, (m.lp - eps * m.grad_lp) / m.l2) : 0.0;
    };
    auto c2 = [](const Norms& m, double eps) {
        return m.lp > 0.0 ? std::max(0.0, (m.frac - eps * m.w1p) / m.lp) : 0.0;
    };
    std::vector<EstimateReport> out;
    for (double eps : epsilons) {
        double m1 = 0.0, m2 = 0.0;
        for (const Norms& m : family) {
            m1 = std::max(m1, c1(m, eps));
            m2 = std::max(m2, c2(m, eps));
        }
        EstimateReport r1 = make_report("int1", m1, 1.0, constant, f.grid().n(), eps);
        r1.diagnostics = {{"c_input", c1(family[0], eps)},
                          {"seed", static_cast<double>(seed)},
                          {"n_random", n_random}};
        EstimateReport r2 = make_report("int2", m2, 1.0, constant, f.grid().n(), eps);
        r2.diagnostics = {{"c_input", c2(family[0], eps)},
                          {"seed", static_cast<double>(seed)},
                          {"n_random", n_random},
                          {"order", 1.0 / p + eta}};
        out.push_back(std::move(r1));
        out.push_back(std::move(r2));
    }
    return out;
}

// Sweep ---------------------------------------------------------------------

std::vector<EstimateReport> estimate_sweep(const SolveConfig& base, const PhysicalParams& params,
                                           const DataSpec& data, const std::vector<int>& ns,
                                           const std::vector<double>& epsilons, double constant) {
    std::vector<std::future<std::vector<EstimateReport>>> runs;
    for (int n : ns)
        for (double eps : epsilons)
            runs.push_back(std::async(std::launch::async, [&, n, eps] {
                SolveConfig cfg = base;
                cfg.n = n;
                try {
                    const Grid g(n);
                    const ProblemSetup setup = prepare_problem(cfg, params, make_boundary_data(g, params, data));
                    const RegularizedSolution sol = solve_regularized(eps, cfg, setup);
                    const RegularizedProblem prob = regularized_problem(setup, cfg, eps);
                    const Linearization lin(prob, sol.state.u, sol.state.w);
                    const LinearizedData ld = linearized_data(lin);
                    std::vector<EstimateReport> rs{verify_energy_estimate(ld, sol.state, constant),
                                                   verify_transport_reduction(ld, sol.state, constant)};
                    for (auto& r : verify_apriori(ld, sol.state, constant)) rs.push_back(std::move(r));
                    return rs;
                } catch (const Error& e) {
                    EstimateReport r = make_report("solve", 0.0, 0.0, constant, n, eps);
                    r.pass = false;
                    r.precondition_ok = false;
                    r.note = std::string(e.kind()) + ": " + e.what();
                    return std::vector<EstimateReport>{r};
                }
            }));
    std::vector<EstimateReport> out;
    for (auto& r : runs)
        for (auto& rep : r.get()) out.push_back(std::move(rep));
    return out;
}

double constant_spread(const std::vector<EstimateReport>& reports, const std::string& name, int n) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& r : reports)
        if (r.name == name && r.n == n) {
            lo = std::min(lo, r.implied_constant);
            hi = std::max(hi, r.implied_constant);
        }
    if (!(hi > 0.0) || !(lo > 0.0)) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

} // namespace cns
