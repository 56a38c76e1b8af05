#include "doctest.h"

#include "cns/data.hpp"
#include "cns/errors.hpp"
#include "cns/fixed_point.hpp"
#include "cns/manufactured.hpp"

#include <algorithm>
#include <cmath>

using namespace cns;

namespace {

ProblemSetup setup_for(const SolveConfig& cfg, const DataSpec& spec,
                       const PhysicalParams& params = {}) {
    const Grid g(cfg.n);
    return prepare_problem(cfg, params, make_boundary_data(g, params, spec));
}

SolveConfig config_n(int n) {
    SolveConfig cfg;
    cfg.n = n;
    return cfg;
}

double perturbation_norm(const FlowSolution& s) { return s.u_w2p + s.w_w1p; }

} // namespace

TEST_CASE("geometric schedule endpoints and validation") {
    const auto s = geometric_schedule(1e-1, 1e-5, 1e-1);
    REQUIRE(s.size() == 5);
    CHECK(s.front() == 1e-1);
    CHECK(s.back() == doctest::Approx(1e-5).epsilon(1e-12));
    CHECK_THROWS_AS(geometric_schedule(1e-5, 1e-1, 0.1), ConfigError);
    CHECK_THROWS_AS(geometric_schedule(1e-1, 1e-5, 1.0), ConfigError);
    CHECK(default_eps_schedule().back() == doctest::Approx(1e-12).epsilon(1e-9));
}

TEST_CASE("solve config rejects invalid fields") {
    SolveConfig ok;
    CHECK_NOTHROW(ok.validate());
    auto rejects = [](auto mutate) {
        SolveConfig c;
        mutate(c);
        CHECK_THROWS_AS(c.validate(), ConfigError);
    };
    rejects([](SolveConfig& c) { c.n = 4; });
    rejects([](SolveConfig& c) { c.eps_schedule = {}; });
    rejects([](SolveConfig& c) { c.eps_schedule = {1e-2, 1e-1}; });
    rejects([](SolveConfig& c) { c.eps_schedule = {1e-1, 1e-1}; });
    rejects([](SolveConfig& c) { c.eps_schedule = {1e-1, -1e-2}; });
    rejects([](SolveConfig& c) { c.outer_tol = 0.0; });
    rejects([](SolveConfig& c) { c.inner_tol = -1.0; });
    rejects([](SolveConfig& c) { c.max_outer = 0; });
    rejects([](SolveConfig& c) { c.damping = 1.5; });
    rejects([](SolveConfig& c) { c.ball_radius = 0.0; });
    rejects([](SolveConfig& c) { c.rho_min = 1.0; });
}

TEST_CASE("zero data converges in one step to the constant flow") {
    const SolveConfig cfg = config_n(16);
    const ProblemSetup setup = setup_for(cfg, DataSpec{0.0});
    const RegularizedSolution r = solve_regularized(1e-2, cfg, setup);
    CHECK(r.iterations == 1);
    CHECK(state_norm(r.state, setup.params.p) == 0.0);

    const FlowSolution s = continue_to_zero(cfg, setup);
    for (std::size_t k = 0; k < setup.grid.node_count(); ++k) {
        CHECK(s.v[0][k] == 1.0);
        CHECK(s.v[1][k] == 0.0);
        CHECK(s.rho[k] == 1.0);
    }
    CHECK(s.mass_flux_defect == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("response is linear in the data amplitude") {
    SolveConfig cfg = config_n(32);
    double norm[2];
    const double deltas[2] = {1e-3, 1e-4};
    for (int k = 0; k < 2; ++k) {
        const ProblemSetup setup = setup_for(cfg, DataSpec{deltas[k]});
        const RegularizedSolution r = solve_regularized(1e-2, cfg, setup);
        norm[k] = state_norm(r.state, setup.params.p);
        CHECK(norm[k] <= 50.0 * deltas[k]);
    }
    // Quadratic terms contribute O(delta^2), so the ratio is 10 up to ~1%.
    CHECK(norm[0] / norm[1] == doctest::Approx(10.0).epsilon(0.02));
}

TEST_CASE("iterates stay in the ball; a small ball is escaped") {
    SolveConfig cfg = config_n(16);
    const ProblemSetup setup = setup_for(cfg, DataSpec{1e-3});
    const RegularizedSolution r = solve_regularized(1e-2, cfg, setup);
    for (const auto& rec : r.history) CHECK(rec.u_w2p + rec.w_w1p <= cfg.ball_radius);

    const double reached = r.history.back().u_w2p + r.history.back().w_w1p;
    cfg.ball_radius = 0.5 * reached;
    try {
        solve_regularized(1e-2, cfg, setup);
        FAIL("expected BallEscape");
    } catch (const BallEscape& e) {
        REQUIRE_FALSE(e.history().empty());
        CHECK(e.history().back() > cfg.ball_radius);
    }
}

TEST_CASE("outer iteration limit raises with the increment history") {
    SolveConfig cfg = config_n(16);
    cfg.max_outer = 2;
    const ProblemSetup setup = setup_for(cfg, DataSpec{1e-3});
    try {
        solve_regularized(1e-2, cfg, setup);
        FAIL("expected OuterNoConvergence");
    } catch (const OuterNoConvergence& e) {
        CHECK(e.history().size() == 2);
        CHECK(e.history()[1] < e.history()[0]);
    }
}

TEST_CASE("continuation: eps-uniform bound, limit residual, monotone gap tail") {
    const SolveConfig cfg = config_n(32);
    const ProblemSetup setup = setup_for(cfg, DataSpec{1e-3});
    const FlowSolution s = continue_to_zero(cfg, setup);

    double lo = 1e300, hi = 0.0;
    for (const auto& st : s.stages) {
        const double m = state_norm(st.state, setup.params.p);
        lo = std::min(lo, m);
        hi = std::max(hi, m);
        CHECK(st.residual <= 10.0 * cfg.inner_tol);
    }
    CHECK(hi <= 2.0 * lo);

    CHECK(s.limit_residual <= 1e2 * cfg.outer_tol);
    CHECK(s.gaps.back().gap <= 10.0 * cfg.outer_tol);

    REQUIRE(s.gaps.size() >= 3);
    const std::size_t m = s.gaps.size();
    CHECK(s.gaps[m - 2].w_gap <= s.gaps[m - 3].w_gap);
    CHECK(s.gaps[m - 1].w_gap <= s.gaps[m - 2].w_gap);

    double rho_low = 1e300;
    for (double r : s.rho.values()) rho_low = std::min(rho_low, r);
    CHECK(rho_low >= cfg.rho_min);
}

TEST_CASE("a short schedule stalls with the gap table") {
    SolveConfig cfg = config_n(16);
    cfg.eps_schedule = {1e-1, 1e-2};
    const ProblemSetup setup = setup_for(cfg, DataSpec{1e-3});
    try {
        continue_to_zero(cfg, setup);
        FAIL("expected ContinuationStalled");
    } catch (const ContinuationStalled& e) {
        CHECK(e.history().size() == 1);
        CHECK(e.history()[0] > 10.0 * cfg.outer_tol);
    }
}

TEST_CASE("solution norm scales with the data amplitude") {
    const SolveConfig cfg = config_n(16);
    std::vector<double> ratio;
    for (double delta : {1e-3, 1e-4, 1e-5}) {
        const ProblemSetup setup = setup_for(cfg, DataSpec{delta});
        ratio.push_back(perturbation_norm(continue_to_zero(cfg, setup)) / delta);
    }
    const auto [lo, hi] = std::minmax_element(ratio.begin(), ratio.end());
    CHECK(*hi <= 50.0);
    CHECK(*hi <= 1.05 * *lo);
}

TEST_CASE("inflow density bump conserves mass at N=64") {
    const SolveConfig cfg = config_n(64);
    const ProblemSetup setup = setup_for(cfg, DataSpec{1e-3, "sine", "none", "none"});
    const FlowSolution s = continue_to_zero(cfg, setup);
    CHECK(s.mass_flux_defect <= 1e-6);
}

TEST_CASE("mass flux of the constant flow vanishes") {
    const Grid g(16);
    VectorField v(g);
    v[0] = ScalarField(g, 1.0);
    CHECK(mass_flux_defect(v, ScalarField(g, 2.0)) == doctest::Approx(0.0).epsilon(1e-15));
    v[1] = ScalarField(g, 1.0);
    CHECK(mass_flux_defect(v, ScalarField(g, 2.0)) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("random starts hit the target norm and depend only on the seed") {
    const Grid g(16);
    const LinearState a = random_start(g, 4.0, 0.1, 42);
    const LinearState b = random_start(g, 4.0, 0.1, 42);
    const LinearState c = random_start(g, 4.0, 0.1, 43);
    CHECK(state_norm(a, 4.0) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(h1_l2_distance(a, b) == 0.0);
    CHECK(h1_l2_distance(a, c) > 0.0);
}

TEST_CASE("uniqueness probe: zero data collapses all starts to zero") {
    const SolveConfig cfg = config_n(16);
    const ProblemSetup setup = setup_for(cfg, DataSpec{0.0});
    const FlowSolution ref = continue_to_zero(cfg, setup);
    const UniquenessReport rep = uniqueness_probe(&ref, cfg, setup, 3, 11);
    CHECK(rep.converged == 3);
    CHECK(rep.max_distance <= 1e-9);
}

TEST_CASE("uniqueness probe: small data, three starts at N=32") {
    const SolveConfig cfg = config_n(32);
    const ProblemSetup setup = setup_for(cfg, DataSpec{1e-3});
    const FlowSolution ref = continue_to_zero(cfg, setup);
    const UniquenessReport rep = uniqueness_probe(&ref, cfg, setup, 3, 2024);
    REQUIRE(rep.starts.size() == 3);
    CHECK(rep.converged == 3);
    CHECK(rep.max_distance <= 1e-7);
}

TEST_CASE("uniqueness probe: a start outside the ball is recorded, not thrown") {
    const SolveConfig cfg = config_n(16);
    const ProblemSetup setup = setup_for(cfg, DataSpec{1e-3});
    const FlowSolution ref = continue_to_zero(cfg, setup);
    UniquenessReport rep;
    CHECK_NOTHROW(rep = uniqueness_probe(&ref, cfg, setup, 1, 5, 10.0));
    REQUIRE(rep.starts.size() == 1);
    const StartOutcome& o = rep.starts[0];
    CHECK(o.start_norm == doctest::Approx(10.0 * cfg.ball_radius).epsilon(1e-12));
    const bool known = o.status == "converged" || o.status == "BallEscape" ||
                       o.status == "DensityFloor" || o.status == "SmallnessViolation" ||
                       o.status == "InnerNoConvergence";
    CHECK(known);
    if (o.status == "converged") CHECK(rep.max_distance <= 1e-7);
}

TEST_CASE("manufactured flow is recovered at second order") {
    double err_v[2], err_rho[2];
    const int ns[2] = {16, 32};
    for (int k = 0; k < 2; ++k) {
        SolveConfig cfg = config_n(ns[k]);
        PhysicalParams params;
        const Grid g(ns[k]);
        const FlowManufactured m = flow_manufactured(g, params, 0.02);
        params.body_force = m.body_force;
        const ProblemSetup setup = prepare_problem(cfg, params, m.data);
        const FlowSolution s = continue_to_zero(cfg, setup);
        err_v[k] = lp_norm(s.v - m.v, 2.0);
        err_rho[k] = lp_norm(s.rho - m.rho, 2.0);
    }
    const double order_v = std::log2(err_v[0] / err_v[1]);
    const double order_rho = std::log2(err_rho[0] / err_rho[1]);
    CHECK(order_v >= 1.7);
    CHECK(order_v <= 2.3);
    CHECK(order_rho >= 1.7);
    CHECK(order_rho <= 2.3);
}
