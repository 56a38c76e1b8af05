// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "cns/errors.hpp"
#include "cns/estimates.hpp"
#include "cns/fixed_point.hpp"
#include "cns/helmholtz.hpp"
#include "cns/manufactured.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

using namespace cns;

namespace {

// Pinned tolerances.
constexpr double constant_flow_tol = 1e-10;
constexpr int constant_flow_max_outer = 2;
constexpr double constant_flow_seconds = 10.0;
constexpr double mms_order_lo = 1.7, mms_order_hi = 2.3;
constexpr double mms_amplitude = 0.02;
constexpr double mms_seconds = 300.0;
constexpr double eps_spread_max = 2.0;
constexpr double delta_spread_max = 2.0;
constexpr double uniqueness_tol = 1e-7;
constexpr double mass_flux_tol = 1e-6;
constexpr double transport_identity_tol = 1e-8;
constexpr double korn_stability = 0.3;
constexpr double helmholtz_tol = 1e-8;
constexpr double helmholtz_seconds = 60.0;
constexpr int helmholtz_fields = 100;
constexpr double verifier_constant = 100.0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const char* title, bool pass, const std::string& detail) {
    std::printf("%s %d %s: %s\n", pass ? "PASS" : "FAIL", id, title, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// Verifier results collected from every converged solve of criteria 1-5.
struct SolveAudit {
    std::vector<EstimateReport> energy;
    double worst_identity = 0.0;
    int linear_solves = 0;
    std::vector<std::string> errors;

    void add(const std::string& label, const FlowSolution& sol, const SolveConfig& cfg, const ProblemSetup& setup) {
        for (const RegularizedSolution& stage : sol.stages) {
            const RegularizedProblem prob = regularized_problem(setup, cfg, stage.eps);
            const Linearization lin(prob, stage.state.u, stage.state.w);
            const LinearizedData d = linearized_data(lin);
            const EstimateReport t = verify_transport_reduction(d, stage.state, verifier_constant);
            worst_identity = std::max(worst_identity, t.diagnostic("identity_residual"));
            ++linear_solves;
            if (stage.eps == sol.final_eps) {
                EstimateReport e = verify_energy_estimate(d, stage.state, verifier_constant);
                e.name = label;
                energy.push_back(e);
            }
        }
    }
};

SolveAudit audit;

ProblemSetup make_setup(const SolveConfig& cfg, const PhysicalParams& params, const DataSpec& spec) {
    return prepare_problem(cfg, params, make_boundary_data(Grid(cfg.n), params, spec));
}

void constant_flow() {
    const auto t0 = Clock::now();
    SolveConfig cfg;
    cfg.n = 32;
    const PhysicalParams params;
    const ProblemSetup setup = make_setup(cfg, params, DataSpec{0.0});
    const FlowSolution sol = continue_to_zero(cfg, setup);
    const double secs = seconds_since(t0);
    int outer = 0;
    for (const auto& s : sol.stages) outer = std::max(outer, s.iterations);
    const double norm = sol.u_w2p + sol.w_w1p;
    audit.add("constant flow N=32", sol, cfg, setup);
    report(1, "constant-flow recovery",
           norm <= constant_flow_tol && outer <= constant_flow_max_outer && secs < constant_flow_seconds,
           "||u||_W2p+||w||_W1p=" + fmt("%.3e", norm) + " (tol 1e-10), max outer iterations per stage=" +
               std::to_string(outer) + " (max 2), " + fmt("%.2f", secs) + " s (max 10)");
}

void mms_convergence() {
    const auto t0 = Clock::now();
    const std::vector<int> ns{16, 32, 64};
    std::vector<double> ev, er;
    for (int n : ns) {
        SolveConfig cfg;
        cfg.n = n;
        PhysicalParams params;
        const Grid g(n);
        const FlowManufactured m = flow_manufactured(g, params, mms_amplitude);
        params.body_force = m.body_force;
        const ProblemSetup setup = prepare_problem(cfg, params, m.data);
        const FlowSolution sol = continue_to_zero(cfg, setup);
        ev.push_back(lp_norm(sol.v - m.v, 2.0));
        er.push_back(lp_norm(sol.rho - m.rho, 2.0));
        audit.add("mms N=" + std::to_string(n), sol, cfg, setup);
    }
    const double secs = seconds_since(t0);
    bool ok = secs < mms_seconds;
    std::string detail;
    for (std::size_t k = 1; k < ns.size(); ++k) {
        const double ov = std::log2(ev[k - 1] / ev[k]), orho = std::log2(er[k - 1] / er[k]);
        ok = ok && ov >= mms_order_lo && ov <= mms_order_hi && orho >= mms_order_lo && orho <= mms_order_hi;
        detail += "N=" + std::to_string(ns[k - 1]) + "->" + std::to_string(ns[k]) + " order v " + fmt("%.3f", ov) +
                  ", rho " + fmt("%.3f", orho) + "; ";
    }
    report(2, "MMS convergence", ok, detail + "band [1.7, 2.3], " + fmt("%.1f", secs) + " s (max 300)");
}

void eps_independence() {
    SolveConfig cfg;
    cfg.n = 32;
    const std::vector<double> epsilons{1e-2, 1e-3, 1e-4};
    const auto reports = estimate_sweep(cfg, PhysicalParams{}, DataSpec{1e-3}, {32}, epsilons, verifier_constant);
    std::string detail = "implied constants";
    bool solved = true;
    for (const auto& r : reports) {
        if (r.name == "solve") solved = false;
        if (r.name == "apriori") detail += " " + fmt("%.4g", r.implied_constant);
        if (r.name == "energy") {
            EstimateReport e = r;
            e.name = "sweep N=32 eps=" + fmt("%.0e", r.eps);
            audit.energy.push_back(e);
        }
    }
    const double spread = solved ? constant_spread(reports, "apriori", 32) : std::numeric_limits<double>::infinity();
    report(3, "eps-independence of the a-priori constant", solved && spread <= eps_spread_max,
           detail + " over eps 1e-2,1e-3,1e-4 at N=32, max/min " + fmt("%.3f", spread) + " (max 2)");
}

void smallness_linearity() {
    SolveConfig cfg;
    cfg.n = 32;
    const PhysicalParams params;
    std::vector<double> ratios;
    std::string detail = "norm/delta";
    for (double delta : {1e-3, 1e-4, 1e-5}) {
        const ProblemSetup setup = make_setup(cfg, params, DataSpec{delta});
        const FlowSolution sol = continue_to_zero(cfg, setup);
        ratios.push_back((sol.u_w2p + sol.w_w1p) / delta);
        detail += " " + fmt("%.5g", ratios.back());
        audit.add("delta=" + fmt("%.0e", delta), sol, cfg, setup);
    }
    const double spread = *std::max_element(ratios.begin(), ratios.end()) /
                          *std::min_element(ratios.begin(), ratios.end());
    report(4, "linear scaling with data amplitude", spread <= delta_spread_max,
           detail + " for delta 1e-3,1e-4,1e-5 at N=32, max/min " + fmt("%.4f", spread) + " (max 2)");
}

void uniqueness() {
    SolveConfig cfg;
    cfg.n = 32;
    const ProblemSetup setup = make_setup(cfg, PhysicalParams{}, DataSpec{1e-3});
    const FlowSolution ref = continue_to_zero(cfg, setup);
    audit.add("uniqueness reference", ref, cfg, setup);
    const UniquenessReport u = uniqueness_probe(&ref, cfg, setup, 3, 1, 0.1);
    for (const auto& s : u.starts)
        if (s.solution) {
            // The probe reruns the whole continuation; audit its final state too.
            const RegularizedProblem prob = regularized_problem(setup, cfg, ref.final_eps);
            const Linearization lin(prob, s.solution->u, s.solution->w);
            EstimateReport e = verify_energy_estimate(linearized_data(lin), *s.solution, verifier_constant);
            e.name = "uniqueness start seed " + std::to_string(s.seed);
            audit.energy.push_back(e);
        }
    report(5, "uniqueness probe", u.converged == 3 && u.max_distance <= uniqueness_tol,
           std::to_string(u.converged) + "/3 starts converged, max pairwise H1xL2 distance " +
               fmt("%.3e", u.max_distance) + " (tol 1e-7) at N=32");
}

void mass_conservation() {
    SolveConfig cfg;
    cfg.n = 64;
    const ProblemSetup setup = make_setup(cfg, PhysicalParams{}, DataSpec{1e-3});
    const FlowSolution sol = continue_to_zero(cfg, setup);
    const double flux = mass_flux_defect(sol.v, sol.rho);
    report(6, "mass conservation", flux <= mass_flux_tol,
           "|boundary integral of rho v.n| = " + fmt("%.3e", flux) + " (tol 1e-6) at N=64, delta=1e-3");
}

void transport_identity() {
    const bool ok = audit.linear_solves > 0 && audit.worst_identity <= transport_identity_tol;
    report(7, "transport-reduction identity", ok,
           "max nodal residual " + fmt("%.3e", audit.worst_identity) + " over " +
               std::to_string(audit.linear_solves) + " converged stage solves (tol 1e-8)");
}

void korn() {
    PhysicalParams params;
    params.f = 10.0;
    const double c16 = korn_constant(Grid(16), params).constant;
    const double c32 = korn_constant(Grid(32), params).constant;
    const double change = std::abs(c16 - c32) / std::min(c16, c32);
    report(8, "Korn positivity", c16 > 0.0 && c32 > 0.0 && change <= korn_stability,
           "f=10: C(16)=" + fmt("%.5f", c16) + ", C(32)=" + fmt("%.5f", c32) + ", relative change " +
               fmt("%.3e", change) + " (max 0.3)");
}

void helmholtz() {
    const auto t0 = Clock::now();
    const Grid g(32);
    double worst_rec = 0.0, worst_orth = 0.0;
    for (int seed = 1; seed <= helmholtz_fields; ++seed) {
        std::mt19937 rng(seed);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        VectorField u(g);
        for (int j = 0; j <= g.n(); ++j)
            for (int i = 0; i <= g.n(); ++i) {
                u[0](i, j) = (i == 0 || i == g.n()) ? 0.0 : unif(rng);
                u[1](i, j) = (j == 0 || j == g.n()) ? 0.0 : unif(rng);
            }
        const HelmholtzParts parts = decompose(u);
        const double scale = std::sqrt(l2_inner(u, u));
        worst_rec = std::max(worst_rec, parts.reconstruction_error / scale);
        const double cross = std::abs(l2_inner(parts.grad_phi, parts.perp_grad_A));
        const double norms = std::sqrt(l2_inner(parts.grad_phi, parts.grad_phi) *
                                       l2_inner(parts.perp_grad_A, parts.perp_grad_A));
        worst_orth = std::max(worst_orth, cross / norms);
    }
    const double secs = seconds_since(t0);
    report(9, "Helmholtz fidelity",
           worst_rec <= helmholtz_tol && worst_orth <= helmholtz_tol && secs < helmholtz_seconds,
           "100 random fields at N=32: max relative reconstruction error " + fmt("%.3e", worst_rec) +
               ", max relative cross term " + fmt("%.3e", worst_orth) + " (tol 1e-8), " + fmt("%.2f", secs) +
               " s (max 60)");
}

void energy() {
    bool ok = !audit.energy.empty();
    double worst = 0.0;
    std::string failed;
    for (const auto& r : audit.energy) {
        const bool good = r.pass && r.precondition_ok && std::isfinite(r.implied_constant);
        if (!good) failed += " [" + r.name + ": " + r.note + "]";
        ok = ok && good;
        worst = std::max(worst, r.implied_constant);
    }
    report(10, "energy-estimate verifier", ok,
           std::to_string(audit.energy.size()) + " converged solves from criteria 1-5, largest implied constant " +
               fmt("%.4g", worst) + " (budget 100)" + failed);
}

template <class F>
void guarded(int id, const char* title, F f) {
    try {
        f();
    } catch (const std::exception& e) {
        report(id, title, false, std::string("threw: ") + e.what());
    }
}

} // namespace

int main() {
    guarded(1, "constant-flow recovery", constant_flow);
    guarded(2, "MMS convergence", mms_convergence);
    guarded(3, "eps-independence of the a-priori constant", eps_independence);
    guarded(4, "linear scaling with data amplitude", smallness_linearity);
    guarded(5, "uniqueness probe", uniqueness);
    guarded(6, "mass conservation", mass_conservation);
    guarded(7, "transport-reduction identity", transport_identity);
    guarded(8, "Korn positivity", korn);
    guarded(9, "Helmholtz fidelity", helmholtz);
    guarded(10, "energy-estimate verifier", energy);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
