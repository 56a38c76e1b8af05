#pragma once

#include "cns/data.hpp"
#include "cns/fixed_point.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cns {

inline constexpr const char* run_modes[] = {"solve", "mms", "estimates", "sweep", "uniqueness"};

/// Everything one CLI run needs. Defaults: mode solve, N = 32, p = 4, the
/// SolveConfig schedule, zero data amplitude.
struct RunSpec {
    std::string mode = "solve";
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    SolveConfig solve;
    PhysicalParams params;
    DataSpec data;
    int n_starts = 3;             ///< uniqueness mode
    double start_fraction = 0.1;  ///< uniqueness mode, start norm / ball radius
    std::vector<int> mms_n{16, 32, 64};
    double mms_amplitude = 0.02;
    std::vector<int> sweep_n{32};
    std::vector<double> sweep_eps{1e-2, 1e-3, 1e-4};
    double estimate_constant = 100.0;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// Parses the line-oriented format
///
///   # comment
///   mode = solve            (keys before any section: mode, out, seed)
///   [grid]     n
///   [physics]  mu nu gamma f p
///   [data]     delta rho_profile d_profile b_profile mms_amplitude
///   [solver]   outer_tol max_outer inner_tol max_inner ball_radius
///              smallness_cap extension_cap damping rho_min scheme
///              n_starts start_fraction estimate_constant
///   [schedule] eps_schedule (comma list) | eps_first eps_last eps_ratio,
///              mms_n, sweep_n, sweep_eps (comma lists)
///
/// and validates the result. Unknown sections or keys, malformed values and
/// violated invariants throw ConfigError with the line number and key.
RunSpec parse_config(const std::string& text);

/// Reads and parses a file; ConfigError if it cannot be read.
RunSpec load_config(const std::string& path);

/// The spec written back in the same format (round-trips through parse_config).
std::string format_config(const RunSpec& spec);

} // namespace cns
