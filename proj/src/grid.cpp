#include "cns/grid.hpp"

#include "cns/errors.hpp"

#include <string>

namespace cns {

namespace {

BoundarySegment make_segment(const Grid& g, Side side) {
    BoundarySegment s;
    s.side = side;
    const int n = g.n();
    switch (side) {
    case Side::Inflow:
        s.kind = SegmentKind::Inflow;
        s.normal = {-1.0, 0.0};
        break;
    case Side::Outflow:
        s.kind = SegmentKind::Outflow;
        s.normal = {1.0, 0.0};
        break;
    case Side::Bottom:
        s.kind = SegmentKind::Wall;
        s.normal = {0.0, -1.0};
        break;
    case Side::Top:
        s.kind = SegmentKind::Wall;
        s.normal = {0.0, 1.0};
        break;
    }
    s.tangent = {-s.normal.x2, s.normal.x1};
    for (int k = 0; k <= n; ++k) {
        std::size_t node = 0;
        switch (side) {
        case Side::Inflow: node = g.index(0, k); break;
        case Side::Outflow: node = g.index(n, k); break;
        case Side::Bottom: node = g.index(k, 0); break;
        case Side::Top: node = g.index(k, n); break;
        }
        s.nodes.push_back(node);
        if (k != 0 && k != n) s.interior_nodes.push_back(node);
    }
    return s;
}

} // namespace

Grid::Grid(int n) : n_(n), h_(0.0) {
    if (n < min_n)
        throw ConfigError("grid size N = " + std::to_string(n) + " is below the minimum of " +
                          std::to_string(min_n));
    h_ = 1.0 / n;
    for (Side s : all_sides) segments_[static_cast<std::size_t>(s)] = make_segment(*this, s);
}

Side Grid::side_of(int i, int j) const {
    if (!is_boundary(i, j) || is_corner(i, j))
        throw ContractViolation("side_of: node is not a non-corner boundary node");
    if (i == 0) return Side::Inflow;
    if (i == n_) return Side::Outflow;
    if (j == 0) return Side::Bottom;
    return Side::Top;
}

Grid build_grid(int n) { return Grid(n); }

CornerPolicy classify_corner(const Grid& grid, int i, int j) {
    if (!grid.is_corner(i, j))
        throw ContractViolation("classify_corner: (" + std::to_string(i) + "," +
                                std::to_string(j) + ") is not a corner");
    CornerPolicy policy;
    policy.velocity_zero = true;
    if (i == 0) {
        policy.density = DensityCondition::Dirichlet;
        policy.density_normal = grid.segment(Side::Inflow).normal;
    } else {
        policy.density = DensityCondition::Neumann;
        policy.density_normal = grid.segment(Side::Outflow).normal;
    }
    return policy;
}

} // namespace cns
