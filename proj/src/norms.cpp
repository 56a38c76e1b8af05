#include "cns/norms.hpp"

#include "cns/errors.hpp"
#include "cns/operators.hpp"

#include <cmath>
#include <string>

namespace cns {

namespace {

void check_p(double p) {
    if (!(p >= 2.0) || !std::isfinite(p))
        throw ContractViolation("norm exponent p must lie in [2, inf), got " + std::to_string(p));
}

// Sum of w_node h^2 |f|^p.
double lp_power(const ScalarField& f, double p) {
    const Grid& g = f.grid();
    const double h2 = g.h() * g.h();
    double acc = 0.0;
    for (int j = 0; j <= g.n(); ++j)
        for (int i = 0; i <= g.n(); ++i) {
            const double v = f(i, j);
            if (!std::isfinite(v))
                throw NumericError("non-finite field value at node " +
                                       std::to_string(g.index(i, j)),
                                   static_cast<std::ptrdiff_t>(g.index(i, j)));
            acc += g.weight(i, j) * h2 * std::pow(std::abs(v), p);
        }
    return acc;
}

double sobolev_power(const ScalarField& f, double p, int order) {
    double acc = lp_power(f, p);
    if (order >= 1) {
        acc += lp_power(differentiate(f, Deriv::D1), p);
        acc += lp_power(differentiate(f, Deriv::D2), p);
    }
    if (order >= 2) {
        acc += lp_power(differentiate(f, Deriv::D11), p);
        acc += lp_power(differentiate(f, Deriv::D12), p);
        acc += lp_power(differentiate(f, Deriv::D22), p);
    }
    return acc;
}

struct TracePowers {
    double lp = 0.0;
    double semi = 0.0;
};

TracePowers trace_powers(const std::vector<double>& v, double h, double p) {
    TracePowers t;
    const std::size_t m = v.size();
    for (std::size_t k = 0; k < m; ++k) {
        if (!std::isfinite(v[k])) throw NumericError("non-finite boundary value");
        const double w = (k == 0 || k + 1 == m) ? 0.5 : 1.0;
        t.lp += w * h * std::pow(std::abs(v[k]), p);
        if (k + 1 < m) t.semi += h * std::pow(std::abs(v[k + 1] - v[k]) / h, p);
    }
    return t;
}

TraceNorm finish(const TracePowers& t, double p) {
    return {std::pow(t.lp, 1.0 / p), std::pow(t.semi, 1.0 / p), std::pow(t.lp + t.semi, 1.0 / p)};
}

} // namespace

double lp_norm(const ScalarField& f, double p) {
    check_p(p);
    return std::pow(lp_power(f, p), 1.0 / p);
}

double lp_norm(const VectorField& f, double p) {
    check_p(p);
    return std::pow(lp_power(f[0], p) + lp_power(f[1], p), 1.0 / p);
}

double sobolev_norm(const ScalarField& f, double p, int order) {
    check_p(p);
    if (order < 0 || order > 2) throw ContractViolation("sobolev_norm: order must be 0, 1 or 2");
    return std::pow(sobolev_power(f, p, order), 1.0 / p);
}

double sobolev_norm(const VectorField& f, double p, int order) {
    check_p(p);
    if (order < 0 || order > 2) throw ContractViolation("sobolev_norm: order must be 0, 1 or 2");
    return std::pow(sobolev_power(f[0], p, order) + sobolev_power(f[1], p, order), 1.0 / p);
}

TraceNorm edge_trace_norm(const std::vector<double>& values, double h, double p) {
    check_p(p);
    return finish(trace_powers(values, h, p), p);
}

TraceNorm boundary_trace_norm(const ScalarField& f, const BoundarySegment& segment, double p) {
    check_p(p);
    std::vector<double> v;
    for (std::size_t node : segment.nodes) v.push_back(f[node]);
    return edge_trace_norm(v, f.grid().h(), p);
}

TraceNorm boundary_trace_norm(const VectorField& f, const BoundarySegment& segment, double p) {
    check_p(p);
    TracePowers acc;
    for (int c = 0; c < 2; ++c) {
        std::vector<double> v;
        for (std::size_t node : segment.nodes) v.push_back(f[c][node]);
        const TracePowers t = trace_powers(v, f.grid().h(), p);
        acc.lp += t.lp;
        acc.semi += t.semi;
    }
    return finish(acc, p);
}

TraceNorm boundary_norm(const EdgeField& f, double p) {
    check_p(p);
    TracePowers acc;
    for (Side s : all_sides) {
        const TracePowers t = trace_powers(f[s], f.grid().h(), p);
        acc.lp += t.lp;
        acc.semi += t.semi;
    }
    return finish(acc, p);
}

TraceNorm boundary_norm(const EdgeField& f, Side side, double p) {
    return edge_trace_norm(f[side], f.grid().h(), p);
}

double slobodeckij_seminorm(const ScalarField& f, double s, double p) {
    check_p(p);
    if (!(s > 0.0 && s < 1.0)) throw ContractViolation("slobodeckij_seminorm: s must be in (0,1)");
    const Grid& g = f.grid();
    const std::size_t m = g.node_count();
    const double h2 = g.h() * g.h();
    const double expo = 0.5 * (2.0 + s * p);
    std::vector<double> w(m);
    std::vector<Vec2> x(m);
    for (std::size_t a = 0; a < m; ++a) {
        w[a] = g.weight(g.i_of(a), g.j_of(a)) * h2;
        x[a] = g.position(a);
    }
    double acc = 0.0;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) {
            const double dx = x[a].x1 - x[b].x1;
            const double dy = x[a].x2 - x[b].x2;
            const double r2 = dx * dx + dy * dy;
            acc += 2.0 * w[a] * w[b] * std::pow(std::abs(f[a] - f[b]), p) / std::pow(r2, expo);
        }
    return std::pow(acc, 1.0 / p);
}

NormReport norm_report(const ScalarField& f, double p, bool with_second_order) {
    NormReport r;
    r.lp = lp_norm(f, p);
    r.w1p = sobolev_norm(f, p, 1);
    if (with_second_order) r.w2p = sobolev_norm(f, p, 2);
    r.h1 = h1_norm(f);
    for (Side s : all_sides)
        r.boundary_lp[static_cast<std::size_t>(s)] =
            boundary_trace_norm(f, f.grid().segment(s), p).lp;
    return r;
}

NormReport norm_report(const VectorField& f, double p, bool with_second_order) {
    NormReport r;
    r.lp = lp_norm(f, p);
    r.w1p = sobolev_norm(f, p, 1);
    if (with_second_order) r.w2p = sobolev_norm(f, p, 2);
    r.h1 = h1_norm(f);
    for (Side s : all_sides)
        r.boundary_lp[static_cast<std::size_t>(s)] =
            boundary_trace_norm(f, f.grid().segment(s), p).lp;
    return r;
}

} // namespace cns
