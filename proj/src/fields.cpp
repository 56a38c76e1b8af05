#include "cns/fields.hpp"

#include "cns/errors.hpp"

namespace cns {

namespace {

void require_same(const Grid& a, const Grid& b) {
    if (!(a == b)) throw ContractViolation("fields live on different grids");
}

} // namespace

ScalarField ScalarField::sample(const Grid& grid, const std::function<double(double, double)>& f) {
    ScalarField out(grid);
    for (int j = 0; j <= grid.n(); ++j)
        for (int i = 0; i <= grid.n(); ++i) out(i, j) = f(grid.x1(i), grid.x2(j));
    return out;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
    require_same(grid_, o.grid_);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
    require_same(grid_, o.grid_);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= o.values_[k];
    return *this;
}

ScalarField& ScalarField::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

ScalarField& ScalarField::operator*=(const ScalarField& o) {
    require_same(grid_, o.grid_);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] *= o.values_[k];
    return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(ScalarField a, double s) { return a *= s; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }
ScalarField operator*(ScalarField a, const ScalarField& b) { return a *= b; }

VectorField VectorField::sample(const Grid& grid, const std::function<Vec2(double, double)>& f) {
    VectorField out(grid);
    for (int j = 0; j <= grid.n(); ++j)
        for (int i = 0; i <= grid.n(); ++i) {
            const Vec2 v = f(grid.x1(i), grid.x2(j));
            out[0](i, j) = v.x1;
            out[1](i, j) = v.x2;
        }
    return out;
}

VectorField& VectorField::operator+=(const VectorField& o) {
    c_[0] += o.c_[0];
    c_[1] += o.c_[1];
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
    c_[0] -= o.c_[0];
    c_[1] -= o.c_[1];
    return *this;
}

VectorField& VectorField::operator*=(double s) {
    c_[0] *= s;
    c_[1] *= s;
    return *this;
}

VectorField& VectorField::operator*=(const ScalarField& s) {
    c_[0] *= s;
    c_[1] *= s;
    return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(VectorField a, double s) { return a *= s; }
VectorField operator*(double s, VectorField a) { return a *= s; }
VectorField operator*(const ScalarField& s, VectorField a) { return a *= s; }

EdgeField::EdgeField(const Grid& grid, double value) : grid_(grid) {
    for (auto& e : v_) e.assign(grid.stride(), value);
}

EdgeField& EdgeField::operator+=(const EdgeField& o) {
    require_same(grid_, o.grid_);
    for (std::size_t s = 0; s < 4; ++s)
        for (std::size_t k = 0; k < v_[s].size(); ++k) v_[s][k] += o.v_[s][k];
    return *this;
}

EdgeField& EdgeField::operator-=(const EdgeField& o) {
    require_same(grid_, o.grid_);
    for (std::size_t s = 0; s < 4; ++s)
        for (std::size_t k = 0; k < v_[s].size(); ++k) v_[s][k] -= o.v_[s][k];
    return *this;
}

EdgeField& EdgeField::operator*=(double s) {
    for (auto& e : v_)
        for (double& x : e) x *= s;
    return *this;
}

EdgeField operator+(EdgeField a, const EdgeField& b) { return a += b; }
EdgeField operator-(EdgeField a, const EdgeField& b) { return a -= b; }
EdgeField operator*(EdgeField a, double s) { return a *= s; }

std::vector<double> trace(const ScalarField& f, Side side) {
    const auto& seg = f.grid().segment(side);
    std::vector<double> out;
    out.reserve(seg.nodes.size());
    for (std::size_t node : seg.nodes) out.push_back(f[node]);
    return out;
}

} // namespace cns
