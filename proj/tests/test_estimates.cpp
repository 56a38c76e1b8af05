#include "doctest.h"

#include "cns/errors.hpp"
#include "cns/estimates.hpp"
#include "cns/manufactured.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>

using namespace cns;
using std::numbers::pi;

namespace {

LinearizedData zero_system(const Grid& g, double eps = 1e-2) {
    return LinearizedData{VectorField(g), ScalarField(g), VectorField(g), ScalarField(g), VectorField(g),
                          ScalarField(g), EdgeField(g), eps, PhysicalParams{},
                          TransportScheme::Upwind, 0.5};
}

struct Solved {
    LinearizedData data;
    LinearState state;
};

// Fixed point of the regularized problem with small data, linearized at itself.
Solved fixed_point_system(int n, double eps, double delta = 1e-3) {
    SolveConfig cfg;
    cfg.n = n;
    const Grid g(n);
    const PhysicalParams params;
    const ProblemSetup setup = prepare_problem(cfg, params, make_boundary_data(g, params, DataSpec{delta}));
    const RegularizedSolution sol = solve_regularized(eps, cfg, setup);
    const RegularizedProblem prob = regularized_problem(setup, cfg, eps);
    const Linearization lin(prob, sol.state.u, sol.state.w);
    return {linearized_data(lin), sol.state};
}

// Manufactured solution of the system linearized at zero with no extensions,
// which is the constant-coefficient operator.
Solved manufactured_system(int n, double eps) {
    const Grid g(n);
    const PhysicalParams params;
    const LinearManufactured m = linear_manufactured(g, params, eps, 0.1);
    LinearizedData d = zero_system(g, eps);
    d.F = m.F;
    d.G = m.G;
    d.B = m.B;
    const ConstCoeffOperator op(g, params, eps);
    return {d, op.solve(m.F, m.G, m.B)};
}

} // namespace

TEST_CASE("report semantics: zero against zero passes, more slack never fails") {
    const EstimateReport z = make_report("z", 0.0, 0.0, 1.0, 16, 0.1);
    CHECK(z.pass);
    CHECK(z.implied_constant == 0.0);
    const EstimateReport inf = make_report("i", 1.0, 0.0, 1.0, 16, 0.1);
    CHECK_FALSE(inf.pass);

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> unif(0.0, 2.0);
    for (int k = 0; k < 1000; ++k) {
        const double lhs = unif(rng), core = unif(rng), c = unif(rng);
        if (make_report("r", lhs, core, c, 8, 0.0).pass) CHECK(make_report("r", lhs, core, 2.0 * c, 8, 0.0).pass);
    }
    CHECK_THROWS_AS(z.diagnostic("missing"), ContractViolation);
}

TEST_CASE("Korn constant matches a dense generalized eigensolver") {
    const Grid g(8);
    const PhysicalParams params;
    for (bool friction : {true, false}) {
        const KornPencil pencil = korn_pencil(g, params, friction);
        const Eigen::MatrixXd K(pencil.stiffness), M(pencil.gram);
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(K, M);
        REQUIRE(es.info() == Eigen::Success);
        const double oracle = es.eigenvalues().minCoeff();
        CHECK(korn_constant(g, params, friction).constant == doctest::Approx(oracle).epsilon(1e-8));
    }
}

TEST_CASE("Korn constant is positive, non-increasing under refinement and grid-stable") {
    const PhysicalParams params;
    std::vector<double> c;
    for (int n : {8, 16, 32}) c.push_back(korn_constant(Grid(n), params).constant);
    CHECK(c[0] > 0.0);
    CHECK(c[1] <= c[0]);
    CHECK(c[2] <= c[1]);
    CHECK(c[1] == doctest::Approx(c[2]).epsilon(0.2));
}

TEST_CASE("Korn form: linear in mu, zero on translations") {
    const Grid g(16);
    const VectorField u = VectorField::sample(g, [](double x, double y) {
        return Vec2{std::sin(pi * x) * y, std::sin(pi * y) * (1.0 + x)};
    });
    PhysicalParams p1, p2;
    p2.mu = 2.0 * p1.mu;
    CHECK(korn_form_value(u, p2, false) == doctest::Approx(2.0 * korn_form_value(u, p1, false)).epsilon(1e-12));

    // D of a translation vanishes; only the boundary friction sees it.
    VectorField t(g);
    t[0] = ScalarField(g, 3.0);
    CHECK(korn_form(t, p1) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(korn_form_value(u, p1, true) > korn_form_value(u, p1, false));
}

TEST_CASE("re-derived residual agrees with the solver's residual at a fixed point") {
    const Solved s = fixed_point_system(16, 1e-2);
    CHECK(linearized_residual(s.data, s.state) <= 1e-10);
    LinearState bad = s.state;
    bad.w(5, 5) += 1.0;
    CHECK(linearized_residual(s.data, bad) >= 1e-2);
}

TEST_CASE("energy estimate: zero passes trivially") {
    const Grid g(16);
    const EstimateReport r = verify_energy_estimate(zero_system(g), LinearState(g));
    CHECK(r.pass);
    CHECK(r.lhs == 0.0);
    CHECK(r.core == 0.0);
}

TEST_CASE("energy estimate at a fixed point, and rejection of a corrupted density") {
    Solved s = fixed_point_system(32, 1e-3);
    const EstimateReport r = verify_energy_estimate(s.data, s.state);
    CHECK(r.precondition_ok);
    CHECK(r.pass);
    CHECK(std::isfinite(r.implied_constant));
    CHECK(r.diagnostic("eps_outflow_w2") >= 0.0);
    // The telescoped identity uses the upwind difference on one side and the
    // trapezoid rule on the other, so it holds to O(h).
    CHECK(r.diagnostic("telescoping_defect") <= 0.1);

    s.state.w(10, 10) += 1.0;
    const EstimateReport bad = verify_energy_estimate(s.data, s.state);
    CHECK_FALSE(bad.precondition_ok);
    CHECK_FALSE(bad.pass);
    CHECK_FALSE(bad.note.empty());
}

TEST_CASE("transport reduction: zero, nodal identity, eps-stable constant") {
    const Grid g(16);
    const EstimateReport z = verify_transport_reduction(zero_system(g), LinearState(g));
    CHECK(z.pass);
    CHECK(z.lhs == 0.0);

    const Solved m = manufactured_system(32, 1e-2);
    const EstimateReport lin = verify_transport_reduction(m.data, m.state);
    CHECK(lin.diagnostic("identity_residual") <= 1e-8);

    std::vector<double> c;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
        const Solved s = fixed_point_system(32, eps);
        const EstimateReport r = verify_transport_reduction(s.data, s.state);
        CHECK(r.diagnostic("identity_residual") <= 1e-8);
        CHECK(r.pass);
        c.push_back(r.implied_constant);
    }
    CHECK(*std::max_element(c.begin(), c.end()) <= 2.0 * *std::min_element(c.begin(), c.end()));
}

TEST_CASE("transport identity rejects a non-solution") {
    Solved s = fixed_point_system(16, 1e-2);
    s.state.u[0](4, 4) += 0.5;
    const EstimateReport r = verify_transport_reduction(s.data, s.state);
    CHECK_FALSE(r.precondition_ok);
    CHECK_FALSE(r.pass);
}

TEST_CASE("a-priori estimate: zero passes, manufactured constant is grid-stable") {
    const Grid g(16);
    for (const EstimateReport& r : verify_apriori(zero_system(g), LinearState(g))) {
        CHECK(r.pass);
        CHECK(r.lhs == 0.0);
    }

    double c[2];
    const int ns[2] = {16, 32};
    for (int k = 0; k < 2; ++k) {
        const Solved m = manufactured_system(ns[k], 1e-2);
        const auto reports = verify_apriori(m.data, m.state);
        REQUIRE(reports.size() == 2);
        CHECK(reports[0].pass);
        CHECK(reports[1].diagnostic("helmholtz_reconstruction") <= 1e-8);
        c[k] = reports[0].implied_constant;
    }
    CHECK(c[0] == doctest::Approx(c[1]).epsilon(0.5));
}

TEST_CASE("interpolation: constant field, oscillatory growth, homogeneity, seeds") {
    const Grid g(16);
    const ScalarField one(g, 2.5);
    for (const EstimateReport& r : verify_interpolation(one, 4.0, {1.0, 0.1}, 1, 5))
        if (r.name == "int1") CHECK(r.diagnostic("c_input") == doctest::Approx(1.0).epsilon(1e-12));

    const ScalarField osc = ScalarField::sample(g, [&g](double x, double) { return std::sin(g.n() / 4 * pi * x); });
    const auto a = verify_interpolation(osc, 4.0, {1.0, 0.1, 0.01}, 3, 10);
    std::vector<double> c1;
    for (const auto& r : a)
        if (r.name == "int1") c1.push_back(r.diagnostic("c_input"));
    REQUIRE(c1.size() == 3);
    CHECK(c1[1] >= c1[0]);
    CHECK(c1[2] >= c1[1]);
    CHECK(c1[2] > c1[0]);

    const auto b = verify_interpolation(10.0 * osc, 4.0, {1.0, 0.1, 0.01}, 3, 10);
    const auto again = verify_interpolation(osc, 4.0, {1.0, 0.1, 0.01}, 3, 10);
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(b[k].diagnostic("c_input") == doctest::Approx(a[k].diagnostic("c_input")).epsilon(1e-12));
        CHECK(again[k].implied_constant == a[k].implied_constant);
        CHECK(a[k].pass);
    }
}

TEST_CASE("estimate sweep over eps: every verifier passes with eps-stable constants") {
    SolveConfig cfg;
    const auto reports = estimate_sweep(cfg, PhysicalParams{}, DataSpec{1e-3}, {16}, {1e-2, 1e-3, 1e-4});
    CHECK(reports.size() == 12);
    for (const auto& r : reports) {
        CHECK(r.pass);
        CHECK(r.precondition_ok);
    }
    for (const char* name : {"energy", "transport", "apriori", "grad_h_bar"})
        CHECK(constant_spread(reports, name, 16) <= 2.0);
}
