#include "cns/manufactured.hpp"

#include "cns/jet.hpp"

#include <array>
#include <numbers>

namespace cns {

namespace {

using std::numbers::pi;

struct Tensor {
    double d11, d12, d22;
};

Tensor deformation_of(const Jet& u1, const Jet& u2) {
    return {u1.d1, 0.5 * (u1.d2 + u2.d1), u2.d2};
}

double shear(const Tensor& D, Vec2 n, Vec2 t, double mu) {
    return 2.0 * mu *
           (n.x1 * (D.d11 * t.x1 + D.d12 * t.x2) + n.x2 * (D.d12 * t.x1 + D.d22 * t.x2));
}

// Calls fn(side, k, x1, x2) for every node of every closed edge.
template <class Fn>
void for_each_edge_node(const Grid& g, Fn fn) {
    for (Side s : all_sides)
        for (int k = 0; k <= g.n(); ++k) {
            const Vec2 x = g.position(g.segment(s).nodes[static_cast<std::size_t>(k)]);
            fn(s, k, x.x1, x.x2);
        }
}

} // namespace

LinearManufactured linear_manufactured(const Grid& g, const PhysicalParams& params, double eps,
                                       double a) {
    auto fields = [a](double x, double y) {
        const Jet X = Jet::x1(x), Y = Jet::x2(y);
        const Jet u1 = a * sin(pi * X) * cos(pi * Y);
        const Jet u2 = -0.5 * a * cos(pi * X) * sin(pi * Y);
        const Jet w = a * X * X * (1.0 - 2.0 / 3.0 * X) * (2.0 + cos(pi * Y));
        return std::array<Jet, 3>{u1, u2, w};
    };
    LinearManufactured m{LinearState(g), VectorField(g), ScalarField(g), EdgeField(g)};
    const double mu = params.mu, lam = params.nu + params.mu, gm = params.gamma;
    for (std::size_t k = 0; k < g.node_count(); ++k) {
        const Vec2 x = g.position(k);
        const auto [u1, u2, w] = fields(x.x1, x.x2);
        m.exact.u[0][k] = u1.v;
        m.exact.u[1][k] = u2.v;
        m.exact.w[k] = w.v;
        m.F[0][k] = u1.d1 - mu * u1.laplacian() - lam * (u1.d11 + u2.d12) + gm * w.d1;
        m.F[1][k] = u2.d1 - mu * u2.laplacian() - lam * (u1.d12 + u2.d22) + gm * w.d2;
        m.G[k] = u1.d1 + u2.d2 + w.d1 - eps * w.laplacian();
    }
    for_each_edge_node(g, [&](Side s, int k, double x, double y) {
        const auto [u1, u2, w] = fields(x, y);
        const BoundarySegment& seg = g.segment(s);
        m.B[s][static_cast<std::size_t>(k)] =
            shear(deformation_of(u1, u2), seg.normal, seg.tangent, mu) +
            params.f * (u1.v * seg.tangent.x1 + u2.v * seg.tangent.x2);
    });
    return m;
}

FlowManufactured flow_manufactured(const Grid& g, const PhysicalParams& params, double a) {
    auto fields = [a](double x, double y) {
        const Jet X = Jet::x1(x), Y = Jet::x2(y);
        const Jet m1 = 1.0 - a * pi * X * X * cos(pi * Y);
        const Jet m2 = 2.0 * a * X * sin(pi * Y);
        const Jet rho = 1.0 + a * (X * X * (1.0 - 2.0 / 3.0 * X) + 0.5) * (2.0 + cos(pi * Y));
        return std::array<Jet, 3>{m1 / rho, m2 / rho, rho};
    };
    FlowManufactured out{VectorField(g), ScalarField(g),
                         BoundaryData::constant_flow(g, params), VectorField(g)};
    const double mu = params.mu, lam = params.nu + params.mu, gm = params.gamma;
    for (std::size_t k = 0; k < g.node_count(); ++k) {
        const Vec2 x = g.position(k);
        const auto [v1, v2, rho] = fields(x.x1, x.x2);
        out.v[0][k] = v1.v;
        out.v[1][k] = v2.v;
        out.rho[k] = rho.v;
        const double pr = gm * std::pow(rho.v, gm - 1.0);
        const double conv1 = v1.v * v1.d1 + v2.v * v1.d2;
        const double conv2 = v1.v * v2.d1 + v2.v * v2.d2;
        out.body_force[0][k] =
            (rho.v * conv1 - mu * v1.laplacian() - lam * (v1.d11 + v2.d12) + pr * rho.d1) / rho.v;
        out.body_force[1][k] =
            (rho.v * conv2 - mu * v2.laplacian() - lam * (v1.d12 + v2.d22) + pr * rho.d2) / rho.v;
    }
    for_each_edge_node(g, [&](Side s, int k, double x, double y) {
        const auto [v1, v2, rho] = fields(x, y);
        const BoundarySegment& seg = g.segment(s);
        const std::size_t kk = static_cast<std::size_t>(k);
        out.data.b[s][kk] = shear(deformation_of(v1, v2), seg.normal, seg.tangent, mu) +
                            params.f * (v1.v * seg.tangent.x1 + v2.v * seg.tangent.x2);
        // The walls are impermeable by construction; write the exact zero.
        out.data.d[s][kk] =
            seg.kind == SegmentKind::Wall ? 0.0 : v1.v * seg.normal.x1 + v2.v * seg.normal.x2;
        if (s == Side::Inflow) out.data.rho_in[kk] = rho.v;
    });
    return out;
}

} // namespace cns
