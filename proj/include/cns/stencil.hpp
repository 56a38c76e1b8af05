#pragma once

#include "cns/grid.hpp"

#include <array>
#include <cstddef>

namespace cns {

/// Finite-difference derivatives available on the node grid.
///
/// All are second-order: centered in the interior, one-sided at the edges
/// (3-point for first derivatives, 4-point for second derivatives).
/// D1Upwind is the backward (flow in +x1) second-order difference used for
/// the base-flow transport of the density; it drops to first order in the
/// column next to the inflow edge. D11Mirror and D22Mirror are second
/// differences with a mirrored ghost node at the edge, i.e. the second
/// derivative of a field with zero normal derivative there.
enum class Deriv { Identity, D1, D2, D11, D22, D12, D1Upwind, D11Mirror, D22Mirror };

/// Up to 16 (node, weight) taps.
struct Stencil {
    std::array<std::size_t, 16> node{};
    std::array<double, 16> weight{};
    int size = 0;

    void add(std::size_t n, double w) {
        for (int k = 0; k < size; ++k)
            if (node[k] == n) {
                weight[k] += w;
                return;
            }
        node[size] = n;
        weight[size] = w;
        ++size;
    }
};

/// One-dimensional taps along one axis: offsets are absolute indices.
struct Stencil1D {
    std::array<int, 4> index{};
    std::array<double, 4> weight{};
    int size = 0;
};

Stencil1D first_derivative_1d(int k, int n, double h);
Stencil1D second_derivative_1d(int k, int n, double h);
Stencil1D upwind_derivative_1d(int k, int n, double h);
Stencil1D mirror_second_derivative_1d(int k, int n, double h);

Stencil stencil(const Grid& grid, Deriv d, int i, int j);

/// Applies a stencil to nodal values.
template <class Values>
double apply_stencil(const Stencil& s, const Values& v) {
    double acc = 0.0;
    for (int k = 0; k < s.size; ++k) acc += s.weight[k] * v[s.node[k]];
    return acc;
}

} // namespace cns
