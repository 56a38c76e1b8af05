#include "cns/operators.hpp"

#include "cns/errors.hpp"
#include "cns/norms.hpp"
#include "cns/sparse.hpp"

#include <cmath>
#include <string>

namespace cns {

void PhysicalParams::validate() const {
    auto bad = [](const std::string& what) { throw ConfigError(what); };
    if (!(mu > 0.0)) bad("mu must be positive");
    if (!(nu + 2.0 * mu > 0.0)) bad("nu + 2 mu must be positive");
    if (!(gamma > 1.0)) bad("gamma must exceed 1");
    if (!(f > 0.0)) bad("friction coefficient f must be positive");
    if (!(p > 2.0) || !std::isfinite(p)) bad("Sobolev exponent p must exceed 2");
}

BoundaryData BoundaryData::constant_flow(const Grid& grid, const PhysicalParams& params) {
    BoundaryData data{EdgeField(grid), EdgeField(grid), std::vector<double>(grid.stride(), 1.0)};
    for (Side s : all_sides) {
        const BoundarySegment& seg = grid.segment(s);
        for (double& v : data.b[s]) v = params.f * seg.tangent.x1;
        for (double& v : data.d[s]) v = seg.normal.x1;
    }
    return data;
}

EdgeField BoundaryData::b_perturbation(const PhysicalParams& params) const {
    EdgeField out = b;
    for (Side s : all_sides)
        for (double& v : out[s]) v -= params.f * b.grid().segment(s).tangent.x1;
    return out;
}

EdgeField BoundaryData::d_perturbation() const {
    EdgeField out = d;
    for (Side s : all_sides)
        for (double& v : out[s]) v -= d.grid().segment(s).normal.x1;
    return out;
}

std::vector<double> BoundaryData::rho_perturbation() const {
    std::vector<double> out = rho_in;
    for (double& v : out) v -= 1.0;
    return out;
}

void BoundaryData::validate(const Grid& grid) const {
    if (!(b.grid() == grid) || !(d.grid() == grid) || rho_in.size() != grid.stride())
        throw ConfigError("boundary data does not match the grid");
    for (Side s : {Side::Bottom, Side::Top})
        for (double v : d[s])
            if (v != 0.0) throw ConfigError("normal velocity d must vanish on the walls");
    for (Side s : all_sides)
        for (std::size_t k = 0; k < grid.stride(); ++k)
            if (!std::isfinite(b[s][k]) || !std::isfinite(d[s][k]))
                throw ConfigError("boundary data must be finite");
    for (double v : rho_in)
        if (!std::isfinite(v) || v <= 0.0) throw ConfigError("inflow density must be positive");
}

ScalarField differentiate(const ScalarField& f, Deriv d) {
    const Grid& g = f.grid();
    ScalarField out(g);
    for (int j = 0; j <= g.n(); ++j)
        for (int i = 0; i <= g.n(); ++i) out(i, j) = apply_stencil(stencil(g, d, i, j), f.values());
    return out;
}

VectorField grad(const ScalarField& f) {
    return {differentiate(f, Deriv::D1), differentiate(f, Deriv::D2)};
}

ScalarField div(const VectorField& u) {
    return differentiate(u[0], Deriv::D1) + differentiate(u[1], Deriv::D2);
}

ScalarField laplacian(const ScalarField& f) {
    return differentiate(f, Deriv::D11) + differentiate(f, Deriv::D22);
}

VectorField laplacian(const VectorField& u) { return {laplacian(u[0]), laplacian(u[1])}; }

ScalarField rot2d(const VectorField& u) {
    return differentiate(u[1], Deriv::D1) - differentiate(u[0], Deriv::D2);
}

VectorField grad_div(const VectorField& u) {
    return {differentiate(u[0], Deriv::D11) + differentiate(u[1], Deriv::D12),
            differentiate(u[0], Deriv::D12) + differentiate(u[1], Deriv::D22)};
}

ScalarField convective(const VectorField& a, const ScalarField& f) {
    return a[0] * differentiate(f, Deriv::D1) + a[1] * differentiate(f, Deriv::D2);
}

VectorField convective(const VectorField& a, const VectorField& u) {
    return {convective(a, u[0]), convective(a, u[1])};
}

Deformation deformation(const VectorField& u) {
    ScalarField d12 = differentiate(u[0], Deriv::D2) + differentiate(u[1], Deriv::D1);
    d12 *= 0.5;
    return {differentiate(u[0], Deriv::D1), std::move(d12), differentiate(u[1], Deriv::D2)};
}

EdgeField normal_shear(const VectorField& u, const PhysicalParams& params) {
    const Grid& g = u.grid();
    const Deformation D = deformation(u);
    EdgeField out(g);
    for (Side s : all_sides) {
        const BoundarySegment& seg = g.segment(s);
        const Vec2 n = seg.normal;
        const Vec2 t = seg.tangent;
        for (std::size_t k = 0; k < seg.nodes.size(); ++k) {
            const std::size_t node = seg.nodes[k];
            const double v = n.x1 * (D.d11[node] * t.x1 + D.d12[node] * t.x2) +
                             n.x2 * (D.d12[node] * t.x1 + D.d22[node] * t.x2);
            out[s][k] = 2.0 * params.mu * v;
        }
    }
    return out;
}

EdgeField slip_operator(const VectorField& u, const PhysicalParams& params) {
    const Grid& g = u.grid();
    EdgeField out = normal_shear(u, params);
    for (Side s : all_sides) {
        const BoundarySegment& seg = g.segment(s);
        for (std::size_t k = 0; k < seg.nodes.size(); ++k)
            out[s][k] += params.f * dot(u.at(seg.nodes[k]), seg.tangent);
    }
    return out;
}

EdgeField stress_residual_slip(const VectorField& u, const PhysicalParams& params,
                               const EdgeField& B) {
    return slip_operator(u, params) - B;
}

std::vector<bool> boundary_mask(const Grid& grid, std::initializer_list<Side> sides) {
    std::vector<bool> mask(grid.node_count(), false);
    for (Side s : sides)
        for (std::size_t node : grid.segment(s).nodes) mask[node] = true;
    return mask;
}

namespace {

// Laplace rows in the interior; boundary rows filled by the caller's callback.
template <class BoundaryRow>
Eigen::VectorXd solve_laplace(const Grid& g, const Eigen::VectorXd& rhs, BoundaryRow row) {
    Triplets t;
    for (int j = 0; j <= g.n(); ++j)
        for (int i = 0; i <= g.n(); ++i) {
            const int r = static_cast<int>(g.index(i, j));
            if (g.is_boundary(i, j)) {
                row(i, j, r, t);
                continue;
            }
            for (Deriv d : {Deriv::D11, Deriv::D22}) {
                const Stencil s = stencil(g, d, i, j);
                for (int k = 0; k < s.size; ++k)
                    t.emplace_back(r, static_cast<int>(s.node[k]), s.weight[k]);
            }
        }
    const int m = static_cast<int>(g.node_count());
    const SparseSolver solver(build_matrix(m, m, t));
    return solver.solve(rhs);
}

} // namespace

Extensions build_extensions(const BoundaryData& data, const Grid& g, const PhysicalParams& params,
                            double cap) {
    data.validate(g);
    const EdgeField dp = data.d_perturbation();
    const std::vector<double> rp = data.rho_perturbation();
    const int m = static_cast<int>(g.node_count());

    // u0 = (d - n^1) n on the inflow and outflow edges (corners included).
    // On the walls the normal part vanishes and the tangential part is
    // interpolated linearly between the corner values, so u0 is continuous.
    Eigen::VectorXd r1 = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd r2 = Eigen::VectorXd::Zero(m);
    const std::size_t last = static_cast<std::size_t>(g.n());
    for (int k = 0; k <= g.n(); ++k) {
        const std::size_t kk = static_cast<std::size_t>(k);
        r1[static_cast<Eigen::Index>(g.index(0, k))] = -dp[Side::Inflow][kk];
        r1[static_cast<Eigen::Index>(g.index(g.n(), k))] = dp[Side::Outflow][kk];
    }
    for (int i = 1; i < g.n(); ++i) {
        const double x = g.x1(i);
        r1[static_cast<Eigen::Index>(g.index(i, 0))] =
            (1.0 - x) * -dp[Side::Inflow][0] + x * dp[Side::Outflow][0];
        r1[static_cast<Eigen::Index>(g.index(i, g.n()))] =
            (1.0 - x) * -dp[Side::Inflow][last] + x * dp[Side::Outflow][last];
    }
    auto dirichlet = [](int, int, int r, Triplets& t) { t.emplace_back(r, r, 1.0); };
    const Eigen::VectorXd u1 = solve_laplace(g, r1, dirichlet);
    const Eigen::VectorXd u2 = solve_laplace(g, r2, dirichlet);

    Eigen::VectorXd rw = Eigen::VectorXd::Zero(m);
    for (int j = 0; j <= g.n(); ++j) rw[static_cast<Eigen::Index>(g.index(0, j))] = rp[j];
    auto density_row = [&g](int i, int j, int r, Triplets& t) {
        if (i == 0) {
            t.emplace_back(r, r, 1.0);
            return;
        }
        const Deriv d = (i == g.n()) ? Deriv::D1 : Deriv::D2;
        const Stencil s = stencil(g, d, i, j);
        for (int k = 0; k < s.size; ++k)
            t.emplace_back(r, static_cast<int>(s.node[k]), s.weight[k]);
    };
    const Eigen::VectorXd w = solve_laplace(g, rw, density_row);

    Extensions ext{VectorField(g), ScalarField(g)};
    for (int k = 0; k < m; ++k) {
        ext.u0[0][k] = u1[k];
        ext.u0[1][k] = u2[k];
        ext.w0[k] = w[k];
    }
    ext.u0_w2p = sobolev_norm(ext.u0, params.p, 2);
    ext.w0_w1p = sobolev_norm(ext.w0, params.p, 1);
    if (ext.u0_w2p + ext.w0_w1p > cap)
        throw SmallnessViolation("extension norms ||u0||_W2p + ||w0||_W1p = " +
                                     std::to_string(ext.u0_w2p + ext.w0_w1p) +
                                     " exceed the cap " + std::to_string(cap),
                                 {ext.u0_w2p, ext.w0_w1p}, cap);
    return ext;
}

int mollify_sweeps(const Grid& grid, double eps) {
    if (!(eps >= 0.0)) throw ContractViolation("mollify: eps must be non-negative");
    const double k = std::floor(eps / (grid.h() * grid.h()));
    return k >= grid.n() ? grid.n() : static_cast<int>(k);
}

ScalarField mollify(const ScalarField& f, double eps, const std::vector<bool>& pinned) {
    const Grid& g = f.grid();
    const int n = g.n();
    if (!pinned.empty() && pinned.size() != g.node_count())
        throw ContractViolation("mollify: pin mask size does not match the grid");
    const int sweeps = mollify_sweeps(g, eps);
    ScalarField cur = f;
    ScalarField next(g);
    auto mirror = [n](int k) { return k < 0 ? -k : (k > n ? 2 * n - k : k); };
    for (int s = 0; s < sweeps; ++s) {
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n; ++i) {
                const std::size_t node = g.index(i, j);
                if (!pinned.empty() && pinned[node]) {
                    next[node] = cur[node];
                    continue;
                }
                next[node] = (4.0 * cur(i, j) + cur(mirror(i - 1), j) + cur(mirror(i + 1), j) +
                              cur(i, mirror(j - 1)) + cur(i, mirror(j + 1))) /
                             8.0;
            }
        std::swap(cur, next);
    }
    return cur;
}

VectorField mollify(const VectorField& f, double eps, const std::vector<bool>& pinned) {
    return {mollify(f[0], eps, pinned), mollify(f[1], eps, pinned)};
}

Extensions mollify_extensions(const Extensions& ext, double eps) {
    const Grid& g = ext.w0.grid();
    Extensions out = ext;
    out.u0 = mollify(ext.u0, eps, boundary_mask(g, {Side::Inflow, Side::Outflow, Side::Bottom,
                                                    Side::Top}));
    out.w0 = mollify(ext.w0, eps, boundary_mask(g, {Side::Inflow}));
    return out;
}

Coefficients coefficients(const ScalarField& w_bar, const ScalarField& w0,
                          const PhysicalParams& params, double rho_min) {
    const Grid& g = w_bar.grid();
    Coefficients c{w_bar + w0, ScalarField(g), ScalarField(g), ScalarField(g)};
    const double gm = params.gamma;
    for (std::size_t k = 0; k < g.node_count(); ++k) {
        const double rho = c.rho[k] + 1.0;
        if (!std::isfinite(rho)) throw NumericError("non-finite density", static_cast<std::ptrdiff_t>(k));
        if (rho < rho_min)
            throw DensityFloor("density " + std::to_string(rho) + " below floor " +
                                   std::to_string(rho_min) + " at node " + std::to_string(k),
                               k, rho);
        c.rho[k] = rho;
        c.a1[k] = gm * std::pow(rho, gm - 1.0);
        c.a2[k] = gm * std::pow(rho, gm - 2.0);
        c.a0[k] = gm * std::pow(rho, gm) / (params.nu + 2.0 * params.mu);
    }
    return c;
}

Forcing assemble_F_G(const VectorField& u_bar, const ScalarField& w_bar, const VectorField& u0,
                     const ScalarField& w0, const PhysicalParams& params, double rho_min) {
    const Coefficients c = coefficients(w_bar, w0, params, rho_min);
    const ScalarField& rho = c.rho;

    // Momentum: rho v.grad v with v = (1,0) + u0 + u_bar, minus the part kept
    // in the linear operator (d/dx1 u_bar).
    VectorField transport(u0.grid());
    transport[0] = differentiate(u0[0], Deriv::D1);
    transport[1] = differentiate(u0[1], Deriv::D1);
    transport += convective(u0, u0);
    transport += convective(u0, u_bar);
    transport += convective(u_bar, u0);
    transport += convective(u_bar, u_bar);

    VectorField F = rho * transport;
    F *= -1.0;
    const ScalarField excess = w_bar + w0;
    F -= excess * VectorField(differentiate(u_bar[0], Deriv::D1),
                              differentiate(u_bar[1], Deriv::D1));
    F -= c.a1 * grad(w0);
    F += params.mu * laplacian(u0);
    F += (params.nu + params.mu) * grad_div(u0);
    if (params.body_force) F += rho * *params.body_force;

    ScalarField G = rho * div(u0);
    G *= -1.0;
    G -= convective(u_bar + u0, w0);
    G -= differentiate(w0, Deriv::D1);
    return {std::move(F), std::move(G)};
}

EdgeField slip_datum(const BoundaryData& data, const VectorField& u0,
                     const PhysicalParams& params) {
    EdgeField B = data.b_perturbation(params);
    B -= slip_operator(u0, params);
    return B;
}

} // namespace cns
