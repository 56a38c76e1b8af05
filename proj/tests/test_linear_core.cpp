#include "doctest.h"

#include "cns/data.hpp"
#include "cns/errors.hpp"
#include "cns/linear_core.hpp"
#include "cns/manufactured.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace cns;
using std::numbers::pi;

namespace {

double sup(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

double l2_error(const LinearState& a, const LinearState& b) {
    return lp_norm(a.u - b.u, 2.0) + lp_norm(a.w - b.w, 2.0);
}

RegularizedProblem make_problem(int n, double eps, double delta, const PhysicalParams& params = {}) {
    const Grid g(n);
    const BoundaryData data = make_boundary_data(g, params, DataSpec{delta});
    Extensions ext = build_extensions(data, g, params, 0.5);
    EdgeField B = slip_datum(data, ext.u0, params);
    return RegularizedProblem(ConstCoeffOperator(g, params, eps), std::move(ext), std::move(B));
}

double state_distance(const LinearState& a, const LinearState& b, double p) {
    return state_norm(a.u - b.u, a.w - b.w, p);
}

} // namespace

TEST_CASE("homogeneous data give the zero solution") {
    const Grid g(16);
    const LinearState s = solve_const_coeff(VectorField(g), ScalarField(g), EdgeField(g), 1e-2, PhysicalParams{});
    CHECK(sup(s.u[0]) == 0.0);
    CHECK(sup(s.u[1]) == 0.0);
    CHECK(sup(s.w) == 0.0);
}

TEST_CASE("regularization must be positive") {
    const Grid g(8);
    CHECK_THROWS_AS(solve_const_coeff(VectorField(g), ScalarField(g), EdgeField(g), 0.0, PhysicalParams{}), ConfigError);
    CHECK_THROWS_AS(solve_const_coeff(VectorField(g), ScalarField(g), EdgeField(g), -1e-3, PhysicalParams{}), ConfigError);
}

TEST_CASE("matrix layout and coordinate dump") {
    const Grid g(8);
    const ConstCoeffOperator op(g, PhysicalParams{}, 1e-2);
    CHECK(op.matrix().rows() == 3 * 81);
    CHECK(op.matrix().cols() == 3 * 81);
    std::ostringstream os;
    op.dump_matrix(os);
    std::istringstream is(os.str());
    long long r = 0, c = 0;
    double v = 0.0;
    long long lines = 0;
    while (is >> r >> c >> v) {
        CHECK(op.matrix().coeff(r, c) == v);
        ++lines;
    }
    CHECK(lines == op.matrix().nonZeros());
}

TEST_CASE("manufactured solution converges at second order") {
    for (TransportScheme scheme : {TransportScheme::Upwind, TransportScheme::Centered}) {
        const PhysicalParams params;
        std::vector<double> err;
        for (int n : {16, 32, 64}) {
            const Grid g(n);
            const LinearManufactured m = linear_manufactured(g, params, 1e-2, 1.0);
            const LinearState s = ConstCoeffOperator(g, params, 1e-2, scheme).solve(m.F, m.G, m.B);
            err.push_back(l2_error(s, m.exact));
        }
        for (std::size_t k = 1; k < err.size(); ++k) {
            const double order = std::log2(err[k - 1] / err[k]);
            CHECK(order >= 1.7);
            CHECK(order <= 2.3);
        }
    }
}

TEST_CASE("solution satisfies the discrete equations node by node") {
    const Grid g(32);
    const PhysicalParams params;
    const double eps = 1e-2;
    const LinearState s = solve_const_coeff(VectorField(g), ScalarField(g, 0.3), EdgeField(g), eps, params);
    const ScalarField mass = div(s.u) + differentiate(s.w, Deriv::D1Upwind) - eps * laplacian(s.w);
    double worst = 0.0;
    for (int j = 1; j < g.n(); ++j)
        for (int i = 1; i < g.n(); ++i) worst = std::max(worst, std::abs(mass(i, j) - 0.3));
    CHECK(worst <= 1e-8);

    const LinearManufactured m = linear_manufactured(g, params, eps, 1.0);
    const LinearState t = solve_const_coeff(m.F, m.G, m.B, eps, params);
    const EdgeField slip = stress_residual_slip(t.u, params, m.B);
    for (Side side : all_sides) {
        const auto& seg = g.segment(side);
        for (std::size_t k = 1; k + 1 < seg.nodes.size(); ++k) {
            CHECK(std::abs(slip[side][k]) <= 1e-9);
            CHECK(std::abs(dot(t.u.at(seg.nodes[k]), seg.normal)) <= 1e-10);
        }
    }
    for (std::size_t node : g.segment(Side::Inflow).nodes) CHECK(std::abs(t.w[node]) <= 1e-10);
    // Off the inflow edge the mass equation holds on the boundary node with
    // the Neumann condition entering through mirrored second differences.
    const ScalarField edge_mass = div(t.u) + differentiate(t.w, Deriv::D1Upwind) -
                                  eps * (differentiate(t.w, Deriv::D11Mirror) +
                                         differentiate(t.w, Deriv::D22Mirror)) - m.G;
    for (Side side : {Side::Top, Side::Bottom, Side::Outflow})
        for (std::size_t node : g.segment(side).nodes)
            if (g.i_of(node) != 0) CHECK(std::abs(edge_mass[node]) <= 1e-8);
}

TEST_CASE("S reduces to the constant-coefficient solve at zero perturbation") {
    const RegularizedProblem pr = make_problem(16, 1e-2, 1e-3);
    const Grid& g = pr.op.grid();
    const Linearization lin(pr, VectorField(g), ScalarField(g));
    const LinearState s = lin.apply_S(LinearState(g));
    const LinearState direct = pr.op.solve(lin.forcing_eps().F, lin.forcing_eps().G, pr.B);
    CHECK(state_distance(s, direct, 4.0) == 0.0);
}

TEST_CASE("S is affine in its argument") {
    const RegularizedProblem pr = make_problem(16, 1e-2, 1e-3);
    const Grid& g = pr.op.grid();
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1e-3, 1e-3);
    auto random_state = [&] {
        LinearState s(g);
        for (int c = 0; c < 2; ++c)
            for (double& v : s.u[c].values()) v = u(rng);
        for (double& v : s.w.values()) v = u(rng);
        return s;
    };
    const LinearState bar = random_state();
    const Linearization lin(pr, bar.u, bar.w);
    const LinearState x = random_state();
    const LinearState y = random_state();
    const double a = 0.3;
    const LinearState mix(a * x.u + (1 - a) * y.u, a * x.w + (1 - a) * y.w);
    const LinearState sx = lin.apply_S(x), sy = lin.apply_S(y), sm = lin.apply_S(mix);
    const LinearState comb(a * sx.u + (1 - a) * sy.u, a * sx.w + (1 - a) * sy.w);
    CHECK(lp_norm(sm.u - comb.u, 2.0) + lp_norm(sm.w - comb.w, 2.0) <= 1e-10);
}

TEST_CASE("S depends continuously on the linearization point") {
    const RegularizedProblem pr = make_problem(16, 1e-2, 1e-3);
    const Grid& g = pr.op.grid();
    const ScalarField shape = ScalarField::sample(g, [](double x, double y) { return x * std::cos(pi * y); });
    const LinearState a = Linearization(pr, VectorField(g), shape * 0.0).apply_S(LinearState(g));
    const LinearState b = Linearization(pr, VectorField(g), shape * 1e-6).apply_S(LinearState(g));
    CHECK(sobolev_norm(a.u - b.u, 4.0, 1) + sobolev_norm(a.w - b.w, 4.0, 1) <= 1e-4);
}

TEST_CASE("T maps zero data to zero") {
    const RegularizedProblem pr = make_problem(16, 1e-2, 0.0);
    const Grid& g = pr.op.grid();
    LinearSolveReport rep;
    const LinearState s = apply_T(pr, VectorField(g), ScalarField(g), PicardOptions{}, &rep);
    CHECK(state_norm(s, 4.0) == 0.0);
    CHECK(rep.iterations == 1);
}

TEST_CASE("the Picard fixed point solves the variable-coefficient system") {
    const RegularizedProblem pr = make_problem(16, 1e-2, 1e-3);
    const Grid& g = pr.op.grid();
    const ScalarField wb = ScalarField::sample(g, [](double x, double y) { return 1e-3 * x * std::sin(pi * y); });
    const VectorField ub = VectorField::sample(g, [](double x, double y) {
        return Vec2{1e-3 * std::sin(pi * x) * std::cos(pi * y), 0.0};
    });
    LinearSolveReport rep;
    const LinearState s = apply_T(pr, ub, wb, PicardOptions{}, &rep);
    CHECK(rep.residual <= 1e-10);
    CHECK(Linearization(pr, ub, wb).residual(s) <= 1e-8);
    CHECK(rep.iterations > 1);
    CHECK(rep.u_norms.w2p.has_value());
}

TEST_CASE("lambda family starts at zero and varies continuously") {
    PhysicalParams params;
    const Grid g(16);
    DataSpec spec{1e-3};
    spec.b_profile = "none";
    spec.d_profile = "none";
    const BoundaryData data = make_boundary_data(g, params, spec);
    Extensions ext = build_extensions(data, g, params, 0.5);
    EdgeField B = slip_datum(data, ext.u0, params);
    const RegularizedProblem pr(ConstCoeffOperator(g, params, 1e-2), std::move(ext), std::move(B));
    std::vector<LinearState> sol;
    for (double lambda : {0.0, 0.5, 1.0}) {
        PicardOptions opt;
        opt.lambda = lambda;
        sol.push_back(apply_T(pr, VectorField(g), ScalarField(g), opt));
    }
    CHECK(state_norm(sol[0], 4.0) == 0.0);
    const double gap1 = state_distance(sol[0], sol[1], 4.0);
    const double gap2 = state_distance(sol[1], sol[2], 4.0);
    CHECK(gap1 > 0.0);
    // Near-linear response: equal lambda steps give nearly equal gaps.
    CHECK(gap2 / gap1 == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("linearization point beyond the cap is rejected") {
    RegularizedProblem pr = make_problem(16, 1e-2, 0.0);
    pr.smallness_cap = 1e-3;
    const Grid& g = pr.op.grid();
    CHECK_THROWS_AS(Linearization(pr, VectorField(g), ScalarField(g, 0.01)), SmallnessViolation);
    CHECK_THROWS_AS(Linearization(make_problem(16, 1e-2, 0.0), VectorField(g), ScalarField(g, -0.7)), DensityFloor);
}

TEST_CASE("the constant-coefficient form is coercive on admissible fields") {
    const PhysicalParams params;
    const Grid g(16);
    std::mt19937 rng(11);
    std::normal_distribution<double> c(0.0, 1.0);
    for (double eps : {1e-2, 1e-4}) {
        double worst = 1e300;
        for (int trial = 0; trial < 50; ++trial) {
            const double a1 = c(rng), a2 = c(rng), a3 = c(rng), a4 = c(rng), a5 = c(rng);
            // n.u = 0 on the boundary, w = 0 on the inflow edge.
            const VectorField u = VectorField::sample(g, [&](double x, double y) {
                return Vec2{std::sin(pi * x) * (a1 + a2 * y * y), std::sin(pi * y) * (a3 + a4 * x)};
            });
            const ScalarField w = ScalarField::sample(g, [&](double x, double y) { return x * (a5 + a1 * y); });
            const double q = bilinear_form_value(u, w, eps, params);
            const double h = h1_norm(u) * h1_norm(u) + h1_norm(w) * h1_norm(w);
            worst = std::min(worst, q / h);
        }
        CHECK(worst > 0.0);
    }
}
