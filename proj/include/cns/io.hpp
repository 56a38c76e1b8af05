#pragma once

#include "cns/config.hpp"
#include "cns/estimates.hpp"
#include "cns/fixed_point.hpp"

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace cns {

/// Columns i, j, x1, x2, v1, v2, rho, u1, u2, w (all reals as %.17g).
void write_fields_csv(std::ostream& os, const FlowSolution& s);

/// Legacy VTK structured points (ASCII) with point data rho and vector v.
void write_fields_vtk(std::ostream& os, const FlowSolution& s);

/// Columns eps, outer_iter, increment_norm, u_w2p, w_w1p, residual.
void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRecord>& history);

/// Columns eps, gap, w_gap.
void write_gaps_csv(std::ostream& os, const std::vector<EpsGap>& gaps);

/// Columns name, n, eps, lhs, core, constant, rhs, implied_constant,
/// precondition_ok, pass, note, diagnostics (key=value;...).
void write_estimates_csv(std::ostream& os, const std::vector<EstimateReport>& reports);

/// Exit codes of the CLI.
enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1, ///< any other error (contract, numeric, I/O)
    exit_config = 2,
    exit_no_convergence = 3,
    exit_smallness = 4,
};

/// Maps an exception to its exit code (ConfigError 2, convergence errors 3,
/// SmallnessViolation and DensityFloor 4, anything else 1).
int exit_code_for(const std::exception& e);

struct RunOutcome {
    int exit_code = exit_ok;
    std::filesystem::path out_dir;
    std::string summary; ///< one human-readable line per result
};

/// Executes spec.mode and writes its artifacts under spec.out_dir:
/// manifest.json always; failure.json on error (the exit code says which
/// class of error). Never throws for module errors.
RunOutcome run(const RunSpec& spec);

} // namespace cns
