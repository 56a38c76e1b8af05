#include "doctest.h"

#include "cns/errors.hpp"
#include "cns/grid.hpp"

#include <set>

using namespace cns;

TEST_CASE("grid sizes and spacing") {
    const Grid g = build_grid(8);
    CHECK(g.node_count() == 81);
    CHECK(g.segment(Side::Inflow).nodes.size() == 9);
    CHECK(g.segment(Side::Bottom).nodes.size() + g.segment(Side::Top).nodes.size() == 18);
    CHECK(build_grid(16).h() == 0.0625);
    CHECK(build_grid(16).h() * 16 == 1.0);
}

TEST_CASE("grids below the minimum size are rejected") {
    CHECK_THROWS_AS(build_grid(7), ConfigError);
    CHECK_THROWS_AS(build_grid(0), ConfigError);
}

TEST_CASE("normals and tangents") {
    const Grid g(16);
    for (const auto& seg : g.segments()) {
        CHECK(dot(seg.normal, seg.tangent) == 0.0);
        CHECK(dot(seg.normal, seg.normal) == 1.0);
        CHECK(dot(seg.tangent, seg.tangent) == 1.0);
    }
    CHECK(g.segment(Side::Inflow).normal.x1 == -1.0);
    CHECK(g.segment(Side::Inflow).kind == SegmentKind::Inflow);
    CHECK(g.segment(Side::Outflow).kind == SegmentKind::Outflow);
    CHECK(g.segment(Side::Top).kind == SegmentKind::Wall);
    for (auto [a, b] : {std::pair{Side::Inflow, Side::Outflow}, std::pair{Side::Bottom, Side::Top}}) {
        CHECK(g.segment(a).normal.x1 == -g.segment(b).normal.x1);
        CHECK(g.segment(a).normal.x2 == -g.segment(b).normal.x2);
    }
    // Base flow (1,0) enters only through the inflow edge.
    const Vec2 base{1.0, 0.0};
    CHECK(dot(base, g.segment(Side::Inflow).normal) < 0.0);
    CHECK(dot(base, g.segment(Side::Bottom).normal) == 0.0);
}

TEST_CASE("every non-corner boundary node belongs to exactly one segment") {
    for (int n : {8, 13, 32}) {
        const Grid g(n);
        std::multiset<std::size_t> owners;
        std::size_t total = 0;
        for (const auto& seg : g.segments()) {
            total += seg.interior_nodes.size();
            owners.insert(seg.interior_nodes.begin(), seg.interior_nodes.end());
        }
        CHECK(total + 4 == static_cast<std::size_t>(4 * n));
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n; ++i) {
                const std::size_t node = g.index(i, j);
                const bool edge = g.is_boundary(i, j) && !g.is_corner(i, j);
                CHECK(owners.count(node) == (edge ? 1u : 0u));
                if (edge) {
                    const auto& seg = g.segment(g.side_of(i, j));
                    CHECK(std::count(seg.nodes.begin(), seg.nodes.end(), node) == 1);
                }
            }
    }
}

TEST_CASE("corner policy") {
    const Grid g(8);
    const CornerPolicy c00 = classify_corner(g, 0, 0);
    CHECK(c00.velocity_zero);
    CHECK(c00.density == DensityCondition::Dirichlet);
    CHECK(classify_corner(g, 0, 8).density == DensityCondition::Dirichlet);
    const CornerPolicy c11 = classify_corner(g, 8, 8);
    CHECK(c11.velocity_zero);
    CHECK(c11.density == DensityCondition::Neumann);
    CHECK(c11.density_normal.x1 == 1.0);
    CHECK(classify_corner(g, 8, 0).density == DensityCondition::Neumann);
    CHECK_THROWS_AS(classify_corner(g, 3, 0), ContractViolation);
    CHECK_THROWS_AS(classify_corner(g, 4, 4), ContractViolation);
}
