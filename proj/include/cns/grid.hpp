#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace cns {

struct Vec2 {
    double x1 = 0.0;
    double x2 = 0.0;
};

inline double dot(Vec2 a, Vec2 b) { return a.x1 * b.x1 + a.x2 * b.x2; }

/// Edges of the unit square. Inflow is x1 = 0, Outflow x1 = 1,
/// Bottom x2 = 0 and Top x2 = 1 (the two walls).
enum class Side { Inflow = 0, Outflow = 1, Bottom = 2, Top = 3 };

inline constexpr std::array<Side, 4> all_sides{Side::Inflow, Side::Outflow, Side::Bottom,
                                               Side::Top};

enum class SegmentKind { Inflow, Outflow, Wall };

/// One closed edge of the square.
///
/// `nodes` runs over the whole edge including both corners, ordered by
/// increasing tangential coordinate (x2 on Inflow/Outflow, x1 on walls).
/// `interior_nodes` drops the two corners, so every non-corner boundary
/// node belongs to exactly one segment's interior list.
struct BoundarySegment {
    Side side;
    SegmentKind kind;
    Vec2 normal;  ///< unit outward normal
    Vec2 tangent; ///< counter-clockwise unit tangent, (-n2, n1)
    std::vector<std::size_t> nodes;
    std::vector<std::size_t> interior_nodes;
};

enum class DensityCondition { Dirichlet, Neumann };

struct CornerPolicy {
    bool velocity_zero = true;
    DensityCondition density = DensityCondition::Dirichlet;
    Vec2 density_normal; ///< normal used by the Neumann row
};

/// Collocated node grid on [0,1]^2 with (n+1)^2 nodes and spacing 1/n.
/// Node (i,j) sits at (i*h, j*h) and has linear index j*(n+1)+i.
class Grid {
public:
    static constexpr int min_n = 8;

    explicit Grid(int n);

    int n() const noexcept { return n_; }
    double h() const noexcept { return h_; }
    std::size_t stride() const noexcept { return static_cast<std::size_t>(n_) + 1; }
    std::size_t node_count() const noexcept { return stride() * stride(); }

    std::size_t index(int i, int j) const noexcept {
        return static_cast<std::size_t>(j) * stride() + static_cast<std::size_t>(i);
    }
    int i_of(std::size_t node) const noexcept { return static_cast<int>(node % stride()); }
    int j_of(std::size_t node) const noexcept { return static_cast<int>(node / stride()); }
    double x1(int i) const noexcept { return i * h_; }
    double x2(int j) const noexcept { return j * h_; }
    Vec2 position(std::size_t node) const noexcept { return {x1(i_of(node)), x2(j_of(node))}; }

    bool is_boundary(int i, int j) const noexcept {
        return i == 0 || i == n_ || j == 0 || j == n_;
    }
    bool is_corner(int i, int j) const noexcept {
        return (i == 0 || i == n_) && (j == 0 || j == n_);
    }

    /// Trapezoidal quadrature weight of a node (without the h^2 factor).
    double weight(int i, int j) const noexcept {
        return edge_weight(i) * edge_weight(j);
    }
    double edge_weight(int k) const noexcept { return (k == 0 || k == n_) ? 0.5 : 1.0; }

    const BoundarySegment& segment(Side s) const noexcept {
        return segments_[static_cast<std::size_t>(s)];
    }
    const std::array<BoundarySegment, 4>& segments() const noexcept { return segments_; }

    /// Side owning a non-corner boundary node.
    Side side_of(int i, int j) const;

    friend bool operator==(const Grid& a, const Grid& b) noexcept { return a.n_ == b.n_; }

private:
    int n_;
    double h_;
    std::array<BoundarySegment, 4> segments_;
};

Grid build_grid(int n);

/// Boundary treatment at one of the four corners. Velocity is pinned to
/// zero (both adjacent n.u = 0 conditions); density is Dirichlet on the
/// inflow corners and Neumann (outflow normal) on the outflow corners.
CornerPolicy classify_corner(const Grid& grid, int i, int j);

} // namespace cns
