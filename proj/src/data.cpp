#include "cns/data.hpp"

#include "cns/errors.hpp"

#include <cmath>
#include <numbers>

namespace cns {

namespace {

bool one_of(const std::string& s, std::initializer_list<const char*> names) {
    for (const char* n : names)
        if (s == n) return true;
    return false;
}

} // namespace

void validate(const DataSpec& spec) {
    if (!(spec.delta >= 0.0) || !std::isfinite(spec.delta))
        throw ConfigError("data amplitude delta must be non-negative");
    if (!one_of(spec.rho_profile, {"sine", "constant", "none"}))
        throw ConfigError("unknown rho_profile '" + spec.rho_profile + "'");
    if (!one_of(spec.d_profile, {"outflow_bump", "outflow_parabola", "inflow_parabola", "none"}))
        throw ConfigError("unknown d_profile '" + spec.d_profile + "'");
    if (!one_of(spec.b_profile, {"sine", "walls_sine", "none"}))
        throw ConfigError("unknown b_profile '" + spec.b_profile + "'");
}

BoundaryData make_boundary_data(const Grid& g, const PhysicalParams& params, const DataSpec& spec) {
    validate(spec);
    using std::numbers::pi;
    BoundaryData data = BoundaryData::constant_flow(g, params);
    const double delta = spec.delta;
    for (int k = 0; k <= g.n(); ++k) {
        const double s = k * g.h();
        const std::size_t kk = static_cast<std::size_t>(k);
        if (spec.rho_profile == "sine") data.rho_in[kk] += delta * std::sin(pi * s);
        if (spec.rho_profile == "constant") data.rho_in[kk] += delta;
        if (spec.d_profile == "outflow_bump")
            data.d[Side::Outflow][kk] += 16.0 * delta * s * s * (1.0 - s) * (1.0 - s);
        if (spec.d_profile == "outflow_parabola") data.d[Side::Outflow][kk] += delta * s * (1.0 - s);
        if (spec.d_profile == "inflow_parabola") data.d[Side::Inflow][kk] += delta * s * (1.0 - s);
        for (Side side : all_sides) {
            const bool wall = side == Side::Bottom || side == Side::Top;
            if (spec.b_profile == "sine" || (spec.b_profile == "walls_sine" && wall))
                data.b[side][kk] += delta * std::sin(pi * s);
        }
    }
    return data;
}

} // namespace cns
