#include "cns/helmholtz.hpp"

#include "cns/errors.hpp"
#include "cns/linear_core.hpp"
#include "cns/norms.hpp"
#include "cns/sparse.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace cns {

namespace {

using Mat = Eigen::MatrixXd;
using std::numbers::pi;

// Basis matrices on the nodes x_j = j/n. Rows are nodes, columns modes.
struct Bases {
    Mat cos_all;    // cos(l pi x_j), j, l = 0..n
    Mat dcos_all;   // d/dx of the above
    Mat sin_all;    // sin(k pi x_j), j = 0..n, k = 1..n-1
    Mat dsin_all;   // d/dx of the above
    Mat cos_inv;    // inverse of cos_all
    Mat sin_inner_inv; // inverse of sin_all restricted to j = 1..n-1
};

Bases make_bases(int n) {
    const int m = n + 1;
    Bases b;
    b.cos_all.resize(m, m);
    b.dcos_all.resize(m, m);
    b.sin_all.resize(m, n - 1);
    b.dsin_all.resize(m, n - 1);
    for (int j = 0; j <= n; ++j) {
        const double x = static_cast<double>(j) / n;
        const bool edge = j == 0 || j == n;
        for (int l = 0; l <= n; ++l) {
            b.cos_all(j, l) = std::cos(l * pi * x);
            b.dcos_all(j, l) = edge ? 0.0 : -l * pi * std::sin(l * pi * x);
        }
        for (int k = 1; k < n; ++k) {
            b.sin_all(j, k - 1) = edge ? 0.0 : std::sin(k * pi * x);
            b.dsin_all(j, k - 1) = k * pi * std::cos(k * pi * x);
        }
    }
    b.cos_inv = b.cos_all.partialPivLu().inverse();
    b.sin_inner_inv = b.sin_all.middleRows(1, n - 1).partialPivLu().inverse();
    return b;
}

// Nodal values as an (n+1) x (n+1) matrix indexed (i, j); the field layout
// j*(n+1)+i is exactly column-major.
Mat as_matrix(const ScalarField& f) {
    const int m = static_cast<int>(f.grid().stride());
    return Eigen::Map<const Mat>(f.values().data(), m, m);
}

ScalarField from_matrix(const Grid& g, const Mat& x) {
    ScalarField f(g);
    Eigen::Map<Mat>(f.values().data(), x.rows(), x.cols()) = x;
    return f;
}

} // namespace

double l2_inner(const VectorField& a, const VectorField& b) {
    return integrate(a[0] * b[0] + a[1] * b[1]);
}

EdgeField tangential_trace(const VectorField& u) {
    const Grid& g = u.grid();
    EdgeField out(g);
    for (Side s : all_sides) {
        const BoundarySegment& seg = g.segment(s);
        for (std::size_t k = 0; k < seg.nodes.size(); ++k)
            out[s][k] = dot(u.at(seg.nodes[k]), seg.tangent);
    }
    return out;
}

HelmholtzParts decompose(const VectorField& u, double normal_tol) {
    const Grid& g = u.grid();
    const int n = g.n();
    for (Side s : all_sides) {
        const BoundarySegment& seg = g.segment(s);
        for (std::size_t node : seg.nodes) {
            const double un = dot(u.at(node), seg.normal);
            if (!std::isfinite(un)) throw NumericError("non-finite velocity", node);
            if (std::abs(un) > normal_tol)
                throw ContractViolation("Helmholtz decomposition needs n.u = 0 on the boundary; |n.u| = " +
                                        std::to_string(std::abs(un)) + " at node " +
                                        std::to_string(node));
        }
    }
    const Bases b = make_bases(n);
    const Mat u1 = as_matrix(u[0]);
    const Mat u2 = as_matrix(u[1]);
    // a(k-1, l): u1 coefficients; c(k, l-1): u2 coefficients.
    const Mat a = b.sin_inner_inv * u1.middleRows(1, n - 1) * b.cos_inv.transpose();
    const Mat c = b.cos_inv * u2.middleCols(1, n - 1) * b.sin_inner_inv.transpose();

    Mat P = Mat::Zero(n + 1, n + 1);
    Mat Q = Mat::Zero(n - 1, n - 1);
    for (int k = 1; k < n; ++k)
        for (int l = 1; l < n; ++l) {
            const double ak = a(k - 1, l);
            const double cl = c(k, l - 1);
            const double r = pi * (k * k + l * l);
            P(k, l) = -(k * ak + l * cl) / r;
            Q(k - 1, l - 1) = (k * cl - l * ak) / r;
        }
    // Modes without a rotational partner (cos(0) or the grid-Nyquist cosine
    // in the other variable) are pure gradients.
    for (int k = 1; k < n; ++k) {
        P(k, 0) = -a(k - 1, 0) / (k * pi);
        P(k, n) = -a(k - 1, n) / (k * pi);
    }
    for (int l = 1; l < n; ++l) {
        P(0, l) = -c(0, l - 1) / (l * pi);
        P(n, l) = -c(n, l - 1) / (l * pi);
    }

    HelmholtzParts out{ScalarField(g), ScalarField(g), VectorField(g), VectorField(g), 0.0};
    out.phi = from_matrix(g, b.cos_all * P * b.cos_all.transpose());
    out.A = from_matrix(g, b.sin_all * Q * b.sin_all.transpose());
    out.grad_phi[0] = from_matrix(g, b.dcos_all * P * b.cos_all.transpose());
    out.grad_phi[1] = from_matrix(g, b.cos_all * P * b.dcos_all.transpose());
    out.perp_grad_A[0] = from_matrix(g, -(b.sin_all * Q * b.dsin_all.transpose()));
    out.perp_grad_A[1] = from_matrix(g, b.dsin_all * Q * b.sin_all.transpose());
    out.reconstruction_error = lp_norm(u - out.grad_phi - out.perp_grad_A, 2.0);
    return out;
}

ScalarField solve_vorticity_problem(const ScalarField& source, const EdgeField& dirichlet,
                                    double mu) {
    if (!(mu > 0.0)) throw ContractViolation("vorticity problem needs mu > 0");
    const Grid& g = source.grid();
    const int n = g.n();
    const double h = g.h();
    std::vector<double> boundary(g.node_count(), 0.0);
    std::vector<int> hits(g.node_count(), 0);
    for (Side s : all_sides) {
        const BoundarySegment& seg = g.segment(s);
        for (std::size_t k = 0; k < seg.nodes.size(); ++k) {
            const double v = dirichlet[s][k];
            if (!std::isfinite(v)) throw NumericError("non-finite boundary datum", seg.nodes[k]);
            boundary[seg.nodes[k]] += v;
            ++hits[seg.nodes[k]];
        }
    }
    Triplets t;
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(g.node_count()));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) {
            const auto row = static_cast<int>(g.index(i, j));
            if (g.is_boundary(i, j)) {
                t.emplace_back(row, row, 1.0);
                rhs[row] = boundary[g.index(i, j)] / hits[g.index(i, j)];
                continue;
            }
            const double d = mu / (h * h);
            const double c = 0.5 / h;
            t.emplace_back(row, row, 4.0 * d);
            t.emplace_back(row, static_cast<int>(g.index(i + 1, j)), c - d);
            t.emplace_back(row, static_cast<int>(g.index(i - 1, j)), -c - d);
            t.emplace_back(row, static_cast<int>(g.index(i, j + 1)), -d);
            t.emplace_back(row, static_cast<int>(g.index(i, j - 1)), -d);
            rhs[row] = source(i, j);
        }
    const int size = static_cast<int>(g.node_count());
    const SparseSolver solver(build_matrix(size, size, t));
    const Eigen::VectorXd x = solver.solve(rhs);
    ScalarField alpha(g);
    for (std::size_t k = 0; k < g.node_count(); ++k) alpha[k] = x[static_cast<Eigen::Index>(k)];
    return alpha;
}

ScalarField vorticity_solve(const VectorField& F_rhs, const EdgeField& u_tangential,
                            const EdgeField& B, const PhysicalParams& params) {
    params.validate();
    EdgeField data = B * (1.0 / params.mu) - u_tangential * (params.f / params.mu);
    return solve_vorticity_problem(rot2d(F_rhs), data, params.mu);
}

} // namespace cns
