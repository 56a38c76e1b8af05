#pragma once

#include "cns/grid.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace cns {

/// Nodal scalar values on a grid.
class ScalarField {
public:
    explicit ScalarField(const Grid& grid, double value = 0.0)
        : grid_(grid), values_(grid.node_count(), value) {}

    /// Samples f(x1, x2) at every node.
    static ScalarField sample(const Grid& grid, const std::function<double(double, double)>& f);

    const Grid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }

    double& operator[](std::size_t node) { return values_[node]; }
    double operator[](std::size_t node) const { return values_[node]; }
    double& operator()(int i, int j) { return values_[grid_.index(i, j)]; }
    double operator()(int i, int j) const { return values_[grid_.index(i, j)]; }

    std::vector<double>& values() noexcept { return values_; }
    const std::vector<double>& values() const noexcept { return values_; }

    ScalarField& operator+=(const ScalarField& o);
    ScalarField& operator-=(const ScalarField& o);
    ScalarField& operator*=(double s);

    /// Elementwise product.
    ScalarField& operator*=(const ScalarField& o);

private:
    Grid grid_;
    std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(ScalarField a, double s);
ScalarField operator*(double s, ScalarField a);
ScalarField operator*(ScalarField a, const ScalarField& b);

/// Two nodal components.
class VectorField {
public:
    explicit VectorField(const Grid& grid) : c_{ScalarField(grid), ScalarField(grid)} {}
    VectorField(ScalarField c1, ScalarField c2) : c_{std::move(c1), std::move(c2)} {}

    static VectorField sample(const Grid& grid, const std::function<Vec2(double, double)>& f);

    const Grid& grid() const noexcept { return c_[0].grid(); }
    ScalarField& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
    const ScalarField& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }

    Vec2 at(std::size_t node) const { return {c_[0][node], c_[1][node]}; }

    VectorField& operator+=(const VectorField& o);
    VectorField& operator-=(const VectorField& o);
    VectorField& operator*=(double s);
    /// Multiplies both components by a scalar field.
    VectorField& operator*=(const ScalarField& s);

private:
    std::array<ScalarField, 2> c_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(VectorField a, double s);
VectorField operator*(double s, VectorField a);
VectorField operator*(const ScalarField& s, VectorField a);

/// Scalar values on each closed edge, indexed like BoundarySegment::nodes.
class EdgeField {
public:
    explicit EdgeField(const Grid& grid, double value = 0.0);

    const Grid& grid() const noexcept { return grid_; }
    std::vector<double>& operator[](Side s) { return v_[static_cast<std::size_t>(s)]; }
    const std::vector<double>& operator[](Side s) const { return v_[static_cast<std::size_t>(s)]; }

    EdgeField& operator+=(const EdgeField& o);
    EdgeField& operator-=(const EdgeField& o);
    EdgeField& operator*=(double s);

private:
    Grid grid_;
    std::array<std::vector<double>, 4> v_;
};

EdgeField operator+(EdgeField a, const EdgeField& b);
EdgeField operator-(EdgeField a, const EdgeField& b);
EdgeField operator*(EdgeField a, double s);

/// Restriction of a nodal field to one edge.
std::vector<double> trace(const ScalarField& f, Side side);

} // namespace cns
