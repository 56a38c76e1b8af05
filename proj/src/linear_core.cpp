#include "cns/linear_core.hpp"

#include "cns/errors.hpp"

#include <cmath>
#include <ostream>
#include <string>

namespace cns {

Eigen::VectorXd pack(const LinearState& s) {
    const std::size_t m = s.w.size();
    Eigen::VectorXd x(3 * static_cast<Eigen::Index>(m));
    for (std::size_t k = 0; k < m; ++k) {
        x[unknown(k, 0)] = s.u[0][k];
        x[unknown(k, 1)] = s.u[1][k];
        x[unknown(k, 2)] = s.w[k];
    }
    return x;
}

LinearState unpack(const Grid& g, const Eigen::VectorXd& x) {
    LinearState s(g);
    for (std::size_t k = 0; k < g.node_count(); ++k) {
        s.u[0][k] = x[unknown(k, 0)];
        s.u[1][k] = x[unknown(k, 1)];
        s.w[k] = x[unknown(k, 2)];
    }
    return s;
}

double state_norm(const VectorField& u, const ScalarField& w, double p) {
    return sobolev_norm(u, p, 2) + sobolev_norm(w, p, 1);
}

double state_norm(const LinearState& s, double p) { return state_norm(s.u, s.w, p); }

namespace {

class RowWriter {
public:
    RowWriter(const Grid& g, Triplets& t) : g_(g), t_(t) {}

    void add(int row, Deriv d, int i, int j, int comp, double scale) {
        const Stencil s = stencil(g_, d, i, j);
        for (int k = 0; k < s.size; ++k) t_.emplace_back(row, unknown(s.node[k], comp), scale * s.weight[k]);
    }
    void diag(int row, std::size_t node, int comp, double v) { t_.emplace_back(row, unknown(node, comp), v); }

private:
    const Grid& g_;
    Triplets& t_;
};

int edge_position(const Grid& g, Side s, int i, int j) {
    (void)g;
    return (s == Side::Inflow || s == Side::Outflow) ? j : i;
}

} // namespace

ConstCoeffOperator::ConstCoeffOperator(const Grid& grid, const PhysicalParams& params, double eps,
                                       TransportScheme scheme)
    : grid_(grid), params_(params), eps_(eps), scheme_(scheme) {
    params_.validate();
    if (!(eps >= 0.0) || !std::isfinite(eps))
        throw ConfigError("regularization eps must be non-negative, got " + std::to_string(eps));
    const Grid& g = grid_;
    const double mu = params_.mu;
    const double lam = params_.nu + params_.mu;
    const double gm = params_.gamma;
    Triplets t;
    t.reserve(g.node_count() * 60);
    RowWriter w(g, t);
    const Deriv transport = scheme_ == TransportScheme::Upwind ? Deriv::D1Upwind : Deriv::D1;
    for (int j = 0; j <= g.n(); ++j)
        for (int i = 0; i <= g.n(); ++i) {
            const std::size_t node = g.index(i, j);
            const int r = unknown(node, 0);
            if (!g.is_boundary(i, j)) {
                for (int c = 0; c < 2; ++c) {
                    w.add(r + c, Deriv::D1, i, j, c, 1.0);
                    w.add(r + c, Deriv::D11, i, j, c, -mu);
                    w.add(r + c, Deriv::D22, i, j, c, -mu);
                }
                w.add(r, Deriv::D11, i, j, 0, -lam);
                w.add(r, Deriv::D12, i, j, 1, -lam);
                w.add(r + 1, Deriv::D12, i, j, 0, -lam);
                w.add(r + 1, Deriv::D22, i, j, 1, -lam);
                w.add(r, Deriv::D1, i, j, 2, gm);
                w.add(r + 1, Deriv::D2, i, j, 2, gm);
                w.add(r + 2, Deriv::D1, i, j, 0, 1.0);
                w.add(r + 2, Deriv::D2, i, j, 1, 1.0);
                w.add(r + 2, transport, i, j, 2, 1.0);
                if (eps_ != 0.0) {
                    w.add(r + 2, Deriv::D11, i, j, 2, -eps_);
                    w.add(r + 2, Deriv::D22, i, j, 2, -eps_);
                }
                continue;
            }
            // Density rows off the inflow edge: the mass equation on the
            // boundary node with the zero normal derivative imposed through a
            // mirrored ghost node in the eps-Laplacian. As eps -> 0 the row
            // turns into the plain transport equation.
            auto mass_row_with_mirror = [&] {
                w.add(r + 2, Deriv::D1, i, j, 0, 1.0);
                w.add(r + 2, Deriv::D2, i, j, 1, 1.0);
                w.add(r + 2, transport, i, j, 2, 1.0);
                if (eps_ != 0.0) {
                    w.add(r + 2, Deriv::D11Mirror, i, j, 2, -eps_);
                    w.add(r + 2, Deriv::D22Mirror, i, j, 2, -eps_);
                }
            };
            if (g.is_corner(i, j)) {
                const CornerPolicy policy = classify_corner(g, i, j);
                w.diag(r, node, 0, 1.0);
                w.diag(r + 1, node, 1, 1.0);
                if (policy.density == DensityCondition::Dirichlet)
                    w.diag(r + 2, node, 2, 1.0);
                else
                    mass_row_with_mirror();
                continue;
            }
            const BoundarySegment& seg = g.segment(g.side_of(i, j));
            const Vec2 n = seg.normal;
            const Vec2 tau = seg.tangent;
            w.diag(r, node, 0, n.x1);
            w.diag(r, node, 1, n.x2);
            // 2 mu n.D(u).tau + f u.tau with D12 = (d2 u1 + d1 u2) / 2.
            const double cross = mu * (n.x1 * tau.x2 + n.x2 * tau.x1);
            w.add(r + 1, Deriv::D1, i, j, 0, 2.0 * mu * n.x1 * tau.x1);
            w.add(r + 1, Deriv::D2, i, j, 1, 2.0 * mu * n.x2 * tau.x2);
            w.add(r + 1, Deriv::D2, i, j, 0, cross);
            w.add(r + 1, Deriv::D1, i, j, 1, cross);
            w.diag(r + 1, node, 0, params_.f * tau.x1);
            w.diag(r + 1, node, 1, params_.f * tau.x2);
            if (seg.kind == SegmentKind::Inflow)
                w.diag(r + 2, node, 2, 1.0);
            else
                mass_row_with_mirror();
        }
    const int m = 3 * static_cast<int>(g.node_count());
    shared_ = std::make_shared<Shared>();
    shared_->matrix = build_matrix(m, m, t);
}

const SparseSolver& ConstCoeffOperator::solver() const {
    std::call_once(shared_->once,
                   [this] { shared_->solver = std::make_unique<SparseSolver>(shared_->matrix); });
    return *shared_->solver;
}

Eigen::VectorXd ConstCoeffOperator::rhs(const VectorField& F, const ScalarField& G,
                                        const EdgeField& B) const {
    const Grid& g = grid_;
    if (!(F.grid() == g) || !(G.grid() == g) || !(B.grid() == g))
        throw ContractViolation("right-hand side does not match the operator grid");
    Eigen::VectorXd b = Eigen::VectorXd::Zero(3 * static_cast<Eigen::Index>(g.node_count()));
    for (int j = 0; j <= g.n(); ++j)
        for (int i = 0; i <= g.n(); ++i) {
            const std::size_t node = g.index(i, j);
            if (!g.is_boundary(i, j)) {
                b[unknown(node, 0)] = F[0][node];
                b[unknown(node, 1)] = F[1][node];
                b[unknown(node, 2)] = G[node];
                continue;
            }
            if (i != 0) b[unknown(node, 2)] = G[node];
            if (!g.is_corner(i, j)) {
                const Side s = g.side_of(i, j);
                b[unknown(node, 1)] = B[s][static_cast<std::size_t>(edge_position(g, s, i, j))];
            }
        }
    return b;
}

LinearState ConstCoeffOperator::solve(const VectorField& F, const ScalarField& G,
                                      const EdgeField& B) const {
    return unpack(grid_, solver().solve(rhs(F, G, B)));
}

double ConstCoeffOperator::residual(const LinearState& s, const VectorField& F, const ScalarField& G,
                                    const EdgeField& B) const {
    const Eigen::VectorXd b = rhs(F, G, B);
    const Eigen::VectorXd r = matrix() * pack(s) - b;
    return r.lpNorm<Eigen::Infinity>() / std::max(1.0, b.lpNorm<Eigen::Infinity>());
}

Eigen::VectorXd ConstCoeffOperator::residual_vector(const LinearState& s, const VectorField& F,
                                                    const ScalarField& G, const EdgeField& B) const {
    return matrix() * pack(s) - rhs(F, G, B);
}

void ConstCoeffOperator::dump_matrix(std::ostream& os) const {
    const SparseMatrix& a = matrix();
    char buf[96];
    for (int k = 0; k < a.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(a, k); it; ++it) {
            std::snprintf(buf, sizeof buf, "%lld %lld %.17g\n", static_cast<long long>(it.row()),
                          static_cast<long long>(it.col()), it.value());
            os << buf;
        }
}

LinearState solve_const_coeff(const VectorField& F, const ScalarField& G, const EdgeField& B,
                              double eps, const PhysicalParams& params, TransportScheme scheme) {
    if (!(eps > 0.0)) throw ConfigError("regularization eps must be positive");
    return ConstCoeffOperator(F.grid(), params, eps, scheme).solve(F, G, B);
}

RegularizedProblem::RegularizedProblem(ConstCoeffOperator op_, Extensions ext_, EdgeField B_,
                                       double rho_min_, double smallness_cap_)
    : op(std::move(op_)),
      ext(std::move(ext_)),
      ext_eps(mollify_extensions(ext, op.eps())),
      B(std::move(B_)),
      rho_min(rho_min_),
      smallness_cap(smallness_cap_) {}

Linearization::Linearization(const RegularizedProblem& problem, const VectorField& u_bar,
                             const ScalarField& w_bar)
    : problem_(&problem),
      u_bar_(u_bar),
      w_bar_(w_bar),
      coef_(cns::coefficients(w_bar, problem.ext.w0, problem.op.params(), problem.rho_min)),
      forcing_(assemble_F_G(u_bar, w_bar, problem.ext_eps.u0, problem.ext_eps.w0,
                            problem.op.params(), problem.rho_min)),
      drift_(u_bar + problem.ext.u0),
      excess_(w_bar + problem.ext.w0) {
    const double p = problem.op.params().p;
    const double ub = sobolev_norm(u_bar, p, 2);
    const double wb = sobolev_norm(w_bar, p, 1);
    if (ub + wb > problem.smallness_cap)
        throw SmallnessViolation("linearization point ||u||_W2p + ||w||_W1p = " +
                                     std::to_string(ub + wb) + " exceeds the cap " +
                                     std::to_string(problem.smallness_cap),
                                 {ub, wb}, problem.smallness_cap);
}

Forcing Linearization::modified_forcing(const VectorField& u, const ScalarField& w,
                                        double lambda) const {
    const double gm = problem_->op.params().gamma;
    ScalarField a1_shift = coef_.a1;
    for (double& v : a1_shift.values()) v -= gm;
    VectorField F = forcing_.F;
    F -= a1_shift * grad(w);
    ScalarField G = forcing_.G;
    G -= excess_ * div(u);
    G -= convective(drift_, w);
    if (lambda != 1.0) {
        F *= lambda;
        G *= lambda;
    }
    return {std::move(F), std::move(G)};
}

LinearState Linearization::apply_S(const LinearState& tilde, double lambda) const {
    const Forcing fg = modified_forcing(tilde.u, tilde.w, lambda);
    return problem_->op.solve(fg.F, fg.G, problem_->B);
}

double Linearization::residual(const LinearState& s, double lambda) const {
    const Forcing fg = modified_forcing(s.u, s.w, lambda);
    return problem_->op.residual(s, fg.F, fg.G, problem_->B);
}

LinearState apply_T(const RegularizedProblem& problem, const VectorField& u_bar,
                    const ScalarField& w_bar, const PicardOptions& options,
                    LinearSolveReport* report) {
    if (!(options.damping > 0.0 && options.damping <= 1.0))
        throw ConfigError("damping must lie in (0, 1]");
    const Linearization lin(problem, u_bar, w_bar);
    const double p = problem.op.params().p;
    const Grid& g = problem.op.grid();
    LinearState x(g);
    double theta = options.damping;
    std::vector<double> increments;
    std::vector<double> ratios;
    for (int it = 1; it <= options.max_inner; ++it) {
        const LinearState y = lin.apply_S(x, options.lambda);
        LinearState step(y.u - x.u, y.w - x.w);
        const double inc = state_norm(step, p);
        if (!std::isfinite(inc)) throw NumericError("non-finite Picard increment");
        if (!increments.empty()) {
            const double ratio = inc / std::max(increments.back(), 1e-300);
            ratios.push_back(ratio);
            if (ratio > 1.0 && theta > 1.0 / 64.0) theta *= 0.5;
        }
        increments.push_back(inc);
        step.u *= theta;
        step.w *= theta;
        x.u += step.u;
        x.w += step.w;
        if (inc * theta <= options.inner_tol) {
            if (report) {
                report->iterations = it;
                report->damping = theta;
                report->increments = increments;
                report->residual = lin.residual(x, options.lambda);
                report->u_norms = norm_report(x.u, p, true);
                report->w_norms = norm_report(x.w, p, false);
            }
            return x;
        }
    }
    throw InnerNoConvergence("Picard iteration on S did not reach the inner tolerance in " +
                                 std::to_string(options.max_inner) + " steps",
                             ratios);
}

double integrate(const ScalarField& f) {
    const Grid& g = f.grid();
    double acc = 0.0;
    for (int j = 0; j <= g.n(); ++j)
        for (int i = 0; i <= g.n(); ++i) acc += g.weight(i, j) * f(i, j);
    return acc * g.h() * g.h();
}

double integrate_edge(const Grid& g, const std::vector<double>& values) {
    double acc = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) acc += g.edge_weight(static_cast<int>(k)) * values[k];
    return acc * g.h();
}

double korn_form(const VectorField& u, const PhysicalParams& params) {
    const Deformation D = deformation(u);
    const ScalarField dv = div(u);
    const ScalarField dd = D.d11 * D.d11 + 2.0 * (D.d12 * D.d12) + D.d22 * D.d22;
    return integrate(2.0 * params.mu * dd + params.nu * (dv * dv));
}

double bilinear_form_value(const VectorField& u, const ScalarField& w, double eps,
                           const PhysicalParams& params) {
    const Grid& g = u.grid();
    const double gm = params.gamma;
    const ScalarField adv = u[0] * differentiate(u[0], Deriv::D1) + u[1] * differentiate(u[1], Deriv::D1);
    const VectorField gw = grad(w);
    const ScalarField dens = gm * (w * gw[0]) + (gm * eps) * (gw[0] * gw[0] + gw[1] * gw[1]);
    double value = korn_form(u, params) + integrate(adv) + integrate(dens);
    for (Side s : all_sides) {
        const BoundarySegment& seg = g.segment(s);
        std::vector<double> t2;
        for (std::size_t node : seg.nodes) {
            const double ut = dot(u.at(node), seg.tangent);
            t2.push_back(params.f * ut * ut);
        }
        value += integrate_edge(g, t2);
    }
    return value;
}

} // namespace cns
