#include "cns/fixed_point.hpp"

#include "cns/errors.hpp"

#include <cmath>
#include <future>
#include <numbers>
#include <random>
#include <string>

namespace cns {

std::vector<double> geometric_schedule(double first, double last, double ratio) {
    if (!(first > 0.0 && last > 0.0 && last <= first && ratio > 0.0 && ratio < 1.0))
        throw ConfigError("invalid geometric schedule");
    std::vector<double> out;
    for (int k = 0;; ++k) {
        const double e = first * std::pow(ratio, k);
        if (e < last * (1.0 - 1e-9)) break;
        out.push_back(e);
    }
    return out;
}

std::vector<double> default_eps_schedule() { return geometric_schedule(1e-1, 1e-12, 1e-1); }

void SolveConfig::validate() const {
    auto bad = [](const std::string& what) { throw ConfigError(what); };
    if (n < Grid::min_n) bad("grid size N must be at least " + std::to_string(Grid::min_n));
    if (eps_schedule.empty()) bad("eps_schedule must not be empty");
    for (std::size_t k = 0; k < eps_schedule.size(); ++k) {
        if (!(eps_schedule[k] > 0.0) || !std::isfinite(eps_schedule[k]))
            bad("eps_schedule entries must be positive");
        if (k > 0 && !(eps_schedule[k] < eps_schedule[k - 1]))
            bad("eps_schedule must be strictly decreasing");
    }
    if (!(outer_tol > 0.0)) bad("outer_tol must be positive");
    if (!(inner_tol > 0.0)) bad("inner_tol must be positive");
    if (max_outer < 1) bad("max_outer must be at least 1");
    if (max_inner < 1) bad("max_inner must be at least 1");
    if (!(ball_radius > 0.0)) bad("ball_radius must be positive");
    if (!(smallness_cap > 0.0)) bad("smallness_cap must be positive");
    if (!(extension_cap > 0.0)) bad("extension_cap must be positive");
    if (!(damping > 0.0 && damping <= 1.0)) bad("damping must lie in (0, 1]");
    if (!(rho_min > 0.0 && rho_min < 1.0)) bad("rho_min must lie in (0, 1)");
}

ProblemSetup prepare_problem(const SolveConfig& config, const PhysicalParams& params,
                             const BoundaryData& data) {
    config.validate();
    params.validate();
    const Grid grid(config.n);
    data.validate(grid);
    Extensions ext = build_extensions(data, grid, params, config.extension_cap);
    EdgeField B = slip_datum(data, ext.u0, params);
    return ProblemSetup{grid, params, data, std::move(ext), std::move(B)};
}

RegularizedProblem regularized_problem(const ProblemSetup& setup, const SolveConfig& config,
                                       double eps) {
    return RegularizedProblem(ConstCoeffOperator(setup.grid, setup.params, eps, config.scheme),
                              setup.ext, setup.B, config.rho_min, config.smallness_cap);
}

RegularizedSolution solve_regularized(double eps, const SolveConfig& config,
                                      const ProblemSetup& setup, const LinearState* start) {
    const RegularizedProblem problem = regularized_problem(setup, config, eps);
    const Grid& g = setup.grid;
    const double p = setup.params.p;
    PicardOptions opt;
    opt.inner_tol = config.inner_tol;
    opt.max_inner = config.max_inner;
    opt.damping = config.damping;

    RegularizedSolution out{start ? *start : LinearState(g), eps, 0, 0.0, {}};
    std::vector<double> increments;
    for (int k = 1; k <= config.max_outer; ++k) {
        LinearSolveReport rep;
        LinearState next = apply_T(problem, out.state.u, out.state.w, opt, &rep);
        const double inc = state_norm(next.u - out.state.u, next.w - out.state.w, p);
        const double un = sobolev_norm(next.u, p, 2);
        const double wn = sobolev_norm(next.w, p, 1);
        increments.push_back(inc);
        out.history.push_back({eps, k, inc, un, wn, rep.residual});
        out.state = std::move(next);
        out.iterations = k;
        if (un + wn > config.ball_radius) {
            std::vector<double> norms;
            for (const auto& r : out.history) norms.push_back(r.u_w2p + r.w_w1p);
            throw BallEscape("iterate norm " + std::to_string(un + wn) +
                                 " left the ball of radius " + std::to_string(config.ball_radius) +
                                 " at eps = " + std::to_string(eps),
                             norms);
        }
        if (inc <= config.outer_tol) {
            out.residual = Linearization(problem, out.state.u, out.state.w).residual(out.state);
            return out;
        }
    }
    throw OuterNoConvergence("outer iteration did not converge in " +
                                 std::to_string(config.max_outer) + " steps at eps = " +
                                 std::to_string(eps),
                             increments);
}

double limit_residual(const LinearState& s, const SolveConfig& config, const ProblemSetup& setup) {
    const RegularizedProblem problem = regularized_problem(setup, config, 0.0);
    const Linearization lin(problem, s.u, s.w);
    const Forcing fg = lin.modified_forcing(s.u, s.w);
    const Eigen::VectorXd r = problem.op.residual_vector(s, fg.F, fg.G, problem.B);
    const Eigen::VectorXd b = problem.op.rhs(fg.F, fg.G, problem.B);
    const Grid& g = setup.grid;
    double worst = 0.0;
    for (int j = 0; j <= g.n(); ++j)
        for (int i = 0; i <= g.n(); ++i) {
            const std::size_t node = g.index(i, j);
            for (int c = 0; c < 3; ++c) worst = std::max(worst, std::abs(r[unknown(node, c)]));
        }
    return worst / std::max(1.0, b.lpNorm<Eigen::Infinity>());
}

double mass_flux_defect(const VectorField& v, const ScalarField& rho) {
    const Grid& g = rho.grid();
    double total = 0.0;
    for (Side s : all_sides) {
        const BoundarySegment& seg = g.segment(s);
        std::vector<double> flux;
        for (std::size_t node : seg.nodes) flux.push_back(rho[node] * dot(v.at(node), seg.normal));
        total += integrate_edge(g, flux);
    }
    return std::abs(total);
}

double h1_l2_distance(const LinearState& a, const LinearState& b) {
    const double du = h1_norm(a.u - b.u);
    const double dw = lp_norm(a.w - b.w, 2.0);
    return std::sqrt(du * du + dw * dw);
}

FlowSolution continue_to_zero(const SolveConfig& config, const ProblemSetup& setup,
                              const LinearState* start) {
    config.validate();
    const Grid& g = setup.grid;
    const double p = setup.params.p;
    FlowSolution sol{VectorField(g), ScalarField(g), LinearState(g), 0.0, 0.0, 0.0, 0.0, 0.0, {}, {}, {}};
    const LinearState* warm = start;
    bool cauchy = false;
    for (double eps : config.eps_schedule) {
        RegularizedSolution stage = solve_regularized(eps, config, setup, warm);
        sol.history.insert(sol.history.end(), stage.history.begin(), stage.history.end());
        if (!sol.stages.empty()) {
            const LinearState& prev = sol.stages.back().state;
            const double wg = sobolev_norm(stage.state.w - prev.w, p, 1);
            const double gap = sobolev_norm(stage.state.u - prev.u, p, 2) + wg;
            sol.gaps.push_back({eps, gap, wg});
            if (gap <= 10.0 * config.outer_tol) cauchy = true;
        }
        sol.stages.push_back(std::move(stage));
        warm = &sol.stages.back().state;
        if (cauchy) break;
    }
    if (!cauchy) {
        std::vector<double> table;
        for (const auto& e : sol.gaps) table.push_back(e.gap);
        throw ContinuationStalled("eps-continuation not Cauchy within the schedule; last gap " +
                                      (table.empty() ? std::string("n/a")
                                                     : std::to_string(table.back())),
                                  table);
    }
    const RegularizedSolution& last = sol.stages.back();
    sol.perturbation = last.state;
    sol.final_eps = last.eps;
    sol.u_w2p = sobolev_norm(last.state.u, p, 2);
    sol.w_w1p = sobolev_norm(last.state.w, p, 1);
    sol.v = setup.ext.u0 + last.state.u;
    sol.v[0] += ScalarField(g, 1.0);
    sol.rho = setup.ext.w0 + last.state.w;
    sol.rho += ScalarField(g, 1.0);
    sol.mass_flux_defect = mass_flux_defect(sol.v, sol.rho);
    sol.limit_residual = limit_residual(last.state, config, setup);
    return sol;
}

namespace {
constexpr int modes = 3;
}

LinearState random_start(const Grid& g, double p, double target, std::uint64_t seed) {
    using std::numbers::pi;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto smooth = [&] {
        double a[modes][modes];
        for (auto& row : a)
            for (double& c : row) c = normal(rng);
        return ScalarField::sample(g, [&a](double x, double y) {
            double s = 0.0;
            for (int k = 0; k < modes; ++k)
                for (int l = 0; l < modes; ++l)
                    s += a[k][l] * std::cos(k * pi * x) * std::cos(l * pi * y) / (1.0 + k * k + l * l);
            return s;
        });
    };
    LinearState s(g);
    s.u[0] = smooth();
    s.u[1] = smooth();
    s.w = smooth();
    const double norm = state_norm(s, p);
    const double scale = norm > 0.0 ? target / norm : 0.0;
    s.u *= scale;
    s.w *= scale;
    return s;
}

UniquenessReport uniqueness_probe(const FlowSolution* reference, const SolveConfig& config,
                                  const ProblemSetup& setup, int n_starts, std::uint64_t seed,
                                  double start_fraction) {
    if (n_starts < 1) throw ConfigError("uniqueness probe needs at least one start");
    const double target = start_fraction * config.ball_radius;
    std::vector<std::future<StartOutcome>> runs;
    for (int k = 0; k < n_starts; ++k) {
        const std::uint64_t s = seed + 7919u * static_cast<std::uint64_t>(k);
        runs.push_back(std::async(std::launch::async, [&config, &setup, s, target] {
            StartOutcome o;
            o.seed = s;
            const LinearState start = random_start(setup.grid, setup.params.p, target, s);
            o.start_norm = state_norm(start, setup.params.p);
            try {
                FlowSolution f = continue_to_zero(config, setup, &start);
                o.status = "converged";
                o.solution = std::move(f.perturbation);
            } catch (const Error& e) {
                o.status = e.kind();
                o.message = e.what();
            }
            return o;
        }));
    }
    UniquenessReport rep;
    for (auto& r : runs) rep.starts.push_back(r.get());
    std::vector<const LinearState*> sols;
    if (reference) sols.push_back(&reference->perturbation);
    for (const auto& o : rep.starts)
        if (o.solution) {
            sols.push_back(&*o.solution);
            ++rep.converged;
        }
    for (std::size_t a = 0; a < sols.size(); ++a)
        for (std::size_t b = a + 1; b < sols.size(); ++b)
            rep.max_distance = std::max(rep.max_distance, h1_l2_distance(*sols[a], *sols[b]));
    return rep;
}

} // namespace cns
