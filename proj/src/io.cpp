#include "cns/io.hpp"

#include "cns/errors.hpp"
#include "cns/manufactured.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

#ifndef CNS_VERSION
#define CNS_VERSION "unknown"
#endif

namespace cns {

namespace {

std::string real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_text(std::string s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

} // namespace

void write_fields_csv(std::ostream& os, const FlowSolution& s) {
    const Grid& g = s.rho.grid();
    os << "i,j,x1,x2,v1,v2,rho,u1,u2,w\n";
    for (int j = 0; j <= g.n(); ++j)
        for (int i = 0; i <= g.n(); ++i) {
            const std::size_t k = g.index(i, j);
            os << i << ',' << j << ',' << real(g.x1(i)) << ',' << real(g.x2(j)) << ',' << real(s.v[0][k]) << ','
               << real(s.v[1][k]) << ',' << real(s.rho[k]) << ',' << real(s.perturbation.u[0][k]) << ','
               << real(s.perturbation.u[1][k]) << ',' << real(s.perturbation.w[k]) << '\n';
        }
}

void write_fields_vtk(std::ostream& os, const FlowSolution& s) {
    const Grid& g = s.rho.grid();
    const std::size_t m = g.stride();
    os << "# vtk DataFile Version 3.0\nsteady compressible flow\nASCII\nDATASET STRUCTURED_POINTS\n"
       << "DIMENSIONS " << m << ' ' << m << " 1\nORIGIN 0 0 0\nSPACING " << real(g.h()) << ' ' << real(g.h())
       << " 1\nPOINT_DATA " << g.node_count() << "\nSCALARS rho double 1\nLOOKUP_TABLE default\n";
    for (std::size_t k = 0; k < g.node_count(); ++k) os << real(s.rho[k]) << '\n';
    os << "VECTORS v double\n";
    for (std::size_t k = 0; k < g.node_count(); ++k) os << real(s.v[0][k]) << ' ' << real(s.v[1][k]) << " 0\n";
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRecord>& history) {
    os << "eps,outer_iter,increment_norm,u_w2p,w_w1p,residual\n";
    for (const auto& r : history)
        os << real(r.eps) << ',' << r.outer_iter << ',' << real(r.increment) << ',' << real(r.u_w2p) << ','
           << real(r.w_w1p) << ',' << real(r.residual) << '\n';
}

void write_gaps_csv(std::ostream& os, const std::vector<EpsGap>& gaps) {
    os << "eps,gap,w_gap\n";
    for (const auto& g : gaps) os << real(g.eps) << ',' << real(g.gap) << ',' << real(g.w_gap) << '\n';
}

void write_estimates_csv(std::ostream& os, const std::vector<EstimateReport>& reports) {
    os << "name,n,eps,lhs,core,constant,rhs,implied_constant,precondition_ok,pass,note,diagnostics\n";
    for (const auto& r : reports) {
        std::string diag;
        for (const auto& [k, v] : r.diagnostics) diag += (diag.empty() ? "" : ";") + k + "=" + real(v);
        os << r.name << ',' << r.n << ',' << real(r.eps) << ',' << real(r.lhs) << ',' << real(r.core) << ','
           << real(r.constant) << ',' << real(r.rhs) << ',' << real(r.implied_constant) << ','
           << (r.precondition_ok ? 1 : 0) << ',' << (r.pass ? 1 : 0) << ',' << csv_text(r.note) << ','
           << csv_text(diag) << '\n';
    }
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return exit_config;
    if (dynamic_cast<const ConvergenceError*>(&e)) return exit_no_convergence;
    if (dynamic_cast<const SmallnessViolation*>(&e) || dynamic_cast<const DensityFloor*>(&e)) return exit_smallness;
    return exit_failure;
}

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << text;
    if (!f) throw std::runtime_error("write failed for " + path.string());
}

template <class Writer>
void write_with(const fs::path& path, Writer w) {
    std::ostringstream os;
    w(os);
    write_file(path, os.str());
}

ProblemSetup setup_for(const RunSpec& spec, const SolveConfig& cfg) {
    const Grid g(cfg.n);
    return prepare_problem(cfg, spec.params, make_boundary_data(g, spec.params, spec.data));
}

// Verifiers at the last stage of a continuation run, linearized at the solution.
std::vector<EstimateReport> verify_solution(const RunSpec& spec, const ProblemSetup& setup,
                                            const FlowSolution& sol) {
    const RegularizedProblem prob = regularized_problem(setup, spec.solve, sol.final_eps);
    const Linearization lin(prob, sol.perturbation.u, sol.perturbation.w);
    const LinearizedData d = linearized_data(lin);
    std::vector<EstimateReport> out{verify_energy_estimate(d, sol.perturbation, spec.estimate_constant),
                                    verify_transport_reduction(d, sol.perturbation, spec.estimate_constant)};
    for (auto& r : verify_apriori(d, sol.perturbation, spec.estimate_constant)) out.push_back(std::move(r));
    return out;
}

ordered_json run_solve(const RunSpec& spec, const fs::path& dir, std::string& summary) {
    const ProblemSetup setup = setup_for(spec, spec.solve);
    const FlowSolution sol = continue_to_zero(spec.solve, setup);
    const std::vector<EstimateReport> reports = verify_solution(spec, setup, sol);
    write_with(dir / "fields.csv", [&](std::ostream& os) { write_fields_csv(os, sol); });
    write_with(dir / "fields.vtk", [&](std::ostream& os) { write_fields_vtk(os, sol); });
    write_with(dir / "convergence.csv", [&](std::ostream& os) { write_convergence_csv(os, sol.history); });
    write_with(dir / "gaps.csv", [&](std::ostream& os) { write_gaps_csv(os, sol.gaps); });
    write_with(dir / "estimates.csv", [&](std::ostream& os) { write_estimates_csv(os, reports); });
    summary = "solve: N=" + std::to_string(spec.solve.n) + " ||u||_W2p=" + real(sol.u_w2p) +
              " ||w||_W1p=" + real(sol.w_w1p) + " mass_flux_defect=" + real(sol.mass_flux_defect) +
              " limit_residual=" + real(sol.limit_residual) + " final_eps=" + real(sol.final_eps);
    ordered_json est = ordered_json::array();
    for (const auto& r : reports)
        est.push_back({{"name", r.name}, {"implied_constant", r.implied_constant}, {"pass", r.pass}});
    return {{"u_w2p", sol.u_w2p},
            {"w_w1p", sol.w_w1p},
            {"mass_flux_defect", sol.mass_flux_defect},
            {"limit_residual", sol.limit_residual},
            {"final_eps", sol.final_eps},
            {"stages", sol.stages.size()},
            {"estimates", est}};
}

ordered_json run_mms(const RunSpec& spec, const fs::path& dir, std::string& summary) {
    std::ostringstream os;
    os << "n,h,err_v_l2,err_rho_l2,rate_v,rate_rho\n";
    ordered_json rows = ordered_json::array();
    double prev_v = 0.0, prev_r = 0.0, prev_h = 0.0;
    for (int n : spec.mms_n) {
        SolveConfig cfg = spec.solve;
        cfg.n = n;
        PhysicalParams params = spec.params;
        const Grid g(n);
        const FlowManufactured m = flow_manufactured(g, params, spec.mms_amplitude);
        params.body_force = m.body_force;
        const ProblemSetup setup = prepare_problem(cfg, params, m.data);
        const FlowSolution sol = continue_to_zero(cfg, setup);
        const double ev = lp_norm(sol.v - m.v, 2.0);
        const double er = lp_norm(sol.rho - m.rho, 2.0);
        std::string rv, rr;
        ordered_json row = {{"n", n}, {"err_v_l2", ev}, {"err_rho_l2", er}};
        if (prev_h > 0.0) {
            const double q = std::log(prev_h / g.h());
            const double a = std::log(prev_v / ev) / q, b = std::log(prev_r / er) / q;
            rv = real(a);
            rr = real(b);
            row["rate_v"] = a;
            row["rate_rho"] = b;
            summary += (summary.empty() ? "" : "\n") + std::string("mms: N=") + std::to_string(n) +
                       " rate_v=" + real(a) + " rate_rho=" + real(b);
        }
        os << n << ',' << real(g.h()) << ',' << real(ev) << ',' << real(er) << ',' << rv << ',' << rr << '\n';
        rows.push_back(row);
        prev_v = ev;
        prev_r = er;
        prev_h = g.h();
    }
    write_file(dir / "mms.csv", os.str());
    return {{"levels", rows}};
}

ordered_json run_estimates(const RunSpec& spec, const fs::path& dir, std::string& summary) {
    const Grid g(spec.solve.n);
    const KornResult korn = korn_constant(g, spec.params, true);
    const KornResult korn_plain = korn_constant(g, spec.params, false);
    write_file(dir / "korn.csv", "n,friction,constant,iterations\n" + std::to_string(g.n()) + ",1," +
                                     real(korn.constant) + "," + std::to_string(korn.iterations) + "\n" +
                                     std::to_string(g.n()) + ",0," + real(korn_plain.constant) + "," +
                                     std::to_string(korn_plain.iterations) + "\n");
    std::vector<EstimateReport> reports =
        estimate_sweep(spec.solve, spec.params, spec.data, {spec.solve.n}, spec.sweep_eps, spec.estimate_constant);
    const ScalarField f = random_smooth_field(g, spec.seed);
    for (auto& r : verify_interpolation(f, spec.params.p, {1.0, 0.1, 0.01}, spec.seed)) reports.push_back(std::move(r));
    write_with(dir / "estimates.csv", [&](std::ostream& os) { write_estimates_csv(os, reports); });
    int passed = 0;
    for (const auto& r : reports) passed += r.pass ? 1 : 0;
    summary = "estimates: korn=" + real(korn.constant) + " passed " + std::to_string(passed) + "/" +
              std::to_string(reports.size());
    return {{"korn_constant", korn.constant},
            {"korn_constant_without_friction", korn_plain.constant},
            {"reports", reports.size()},
            {"passed", passed}};
}

ordered_json run_sweep(const RunSpec& spec, const fs::path& dir, std::string& summary) {
    const std::vector<EstimateReport> reports =
        estimate_sweep(spec.solve, spec.params, spec.data, spec.sweep_n, spec.sweep_eps, spec.estimate_constant);
    write_with(dir / "estimates.csv", [&](std::ostream& os) { write_estimates_csv(os, reports); });
    // One subdirectory per (N, eps) run.
    for (int n : spec.sweep_n)
        for (double eps : spec.sweep_eps) {
            std::vector<EstimateReport> mine;
            for (const auto& r : reports)
                if (r.n == n && r.eps == eps) mine.push_back(r);
            char name[64];
            std::snprintf(name, sizeof name, "n%d_eps%.3e", n, eps);
            fs::create_directories(dir / name);
            write_with(dir / name / "estimates.csv", [&](std::ostream& os) { write_estimates_csv(os, mine); });
        }
    std::ostringstream sp;
    sp << "name,n,spread\n";
    ordered_json spreads = ordered_json::array();
    for (int n : spec.sweep_n)
        for (const char* name : {"energy", "transport", "apriori", "grad_h_bar"}) {
            const double s = constant_spread(reports, name, n);
            sp << name << ',' << n << ',' << real(s) << '\n';
            spreads.push_back({{"name", name}, {"n", n}, {"spread", s}});
            summary += (summary.empty() ? "" : "\n") + std::string("sweep: ") + name + " N=" + std::to_string(n) +
                       " max/min implied constant=" + real(s);
        }
    write_file(dir / "spreads.csv", sp.str());
    int passed = 0;
    for (const auto& r : reports) passed += r.pass ? 1 : 0;
    return {{"reports", reports.size()}, {"passed", passed}, {"spreads", spreads}};
}

ordered_json run_uniqueness(const RunSpec& spec, const fs::path& dir, std::string& summary) {
    const ProblemSetup setup = setup_for(spec, spec.solve);
    const FlowSolution ref = continue_to_zero(spec.solve, setup);
    const UniquenessReport rep = uniqueness_probe(&ref, spec.solve, setup, spec.n_starts, spec.seed, spec.start_fraction);
    std::ostringstream os;
    os << "seed,start_norm,status,distance_to_reference,message\n";
    for (const auto& s : rep.starts)
        os << s.seed << ',' << real(s.start_norm) << ',' << s.status << ','
           << (s.solution ? real(h1_l2_distance(*s.solution, ref.perturbation)) : std::string()) << ','
           << csv_text(s.message) << '\n';
    write_file(dir / "uniqueness.csv", os.str());
    summary = "uniqueness: " + std::to_string(rep.converged) + "/" + std::to_string(rep.starts.size()) +
              " starts converged, max pairwise H1xL2 distance " + real(rep.max_distance);
    return {{"starts", rep.starts.size()}, {"converged", rep.converged}, {"max_distance", rep.max_distance}};
}

std::string utc_timestamp() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

RunOutcome run(const RunSpec& spec) {
    RunOutcome out;
    out.out_dir = spec.out_dir;
    const auto t0 = std::chrono::steady_clock::now();
    ordered_json manifest = {{"program", "cns_cli"},
                             {"version", CNS_VERSION},
                             {"mode", spec.mode},
                             {"seed", spec.seed},
                             {"config", format_config(spec)}};
    auto elapsed = [&t0] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };
    try {
        fs::create_directories(out.out_dir);
    } catch (const std::exception& e) {
        out.exit_code = exit_failure;
        out.summary = std::string("cannot create output directory: ") + e.what();
        return out;
    }
    try {
        spec.validate();
        ordered_json results;
        if (spec.mode == "solve")
            results = run_solve(spec, out.out_dir, out.summary);
        else if (spec.mode == "mms")
            results = run_mms(spec, out.out_dir, out.summary);
        else if (spec.mode == "estimates")
            results = run_estimates(spec, out.out_dir, out.summary);
        else if (spec.mode == "sweep")
            results = run_sweep(spec, out.out_dir, out.summary);
        else
            results = run_uniqueness(spec, out.out_dir, out.summary);
        manifest["status"] = "ok";
        manifest["exit_code"] = exit_ok;
        manifest["results"] = results;
    } catch (const std::exception& e) {
        out.exit_code = exit_code_for(e);
        ordered_json failure = {{"status", "failed"},
                                {"mode", spec.mode},
                                {"exit_code", out.exit_code},
                                {"kind", "std::exception"},
                                {"message", e.what()}};
        if (const auto* err = dynamic_cast<const Error*>(&e)) failure["kind"] = err->kind();
        if (const auto* conv = dynamic_cast<const ConvergenceError*>(&e)) failure["history"] = conv->history();
        if (const auto* sv = dynamic_cast<const SmallnessViolation*>(&e)) failure["norms"] = sv->norms();
        out.summary = std::string(failure["kind"].get<std::string>()) + ": " + e.what();
        manifest["status"] = "failed";
        manifest["exit_code"] = out.exit_code;
        manifest["failure"] = failure;
        try {
            write_file(out.out_dir / "failure.json", failure.dump(2) + "\n");
        } catch (const std::exception&) {
        }
    }
    manifest["wall_time_s"] = elapsed();
    manifest["timestamp"] = utc_timestamp();
    try {
        write_file(out.out_dir / "manifest.json", manifest.dump(2) + "\n");
    } catch (const std::exception& e) {
        if (out.exit_code == exit_ok) out.exit_code = exit_failure;
        out.summary += std::string("\nmanifest not written: ") + e.what();
    }
    return out;
}

} // namespace cns
