#include "cns/stencil.hpp"

namespace cns {

Stencil1D first_derivative_1d(int k, int n, double h) {
    Stencil1D s;
    const double c = 1.0 / (2.0 * h);
    if (k == 0) {
        s.index = {0, 1, 2, 0};
        s.weight = {-3.0 * c, 4.0 * c, -1.0 * c, 0.0};
        s.size = 3;
    } else if (k == n) {
        s.index = {n - 2, n - 1, n, 0};
        s.weight = {1.0 * c, -4.0 * c, 3.0 * c, 0.0};
        s.size = 3;
    } else {
        s.index = {k - 1, k + 1, 0, 0};
        s.weight = {-c, c, 0.0, 0.0};
        s.size = 2;
    }
    return s;
}

Stencil1D second_derivative_1d(int k, int n, double h) {
    Stencil1D s;
    const double c = 1.0 / (h * h);
    if (k == 0) {
        s.index = {0, 1, 2, 3};
        s.weight = {2.0 * c, -5.0 * c, 4.0 * c, -1.0 * c};
        s.size = 4;
    } else if (k == n) {
        s.index = {n - 3, n - 2, n - 1, n};
        s.weight = {-1.0 * c, 4.0 * c, -5.0 * c, 2.0 * c};
        s.size = 4;
    } else {
        s.index = {k - 1, k, k + 1, 0};
        s.weight = {c, -2.0 * c, c, 0.0};
        s.size = 3;
    }
    return s;
}

Stencil1D upwind_derivative_1d(int k, int n, double h) {
    if (k == 0) return first_derivative_1d(0, n, h);
    Stencil1D s;
    if (k == 1) {
        s.index = {0, 1, 0, 0};
        s.weight = {-1.0 / h, 1.0 / h, 0.0, 0.0};
        s.size = 2;
        return s;
    }
    const double c = 1.0 / (2.0 * h);
    s.index = {k - 2, k - 1, k, 0};
    s.weight = {c, -4.0 * c, 3.0 * c, 0.0};
    s.size = 3;
    return s;
}

Stencil1D mirror_second_derivative_1d(int k, int n, double h) {
    if (k != 0 && k != n) return second_derivative_1d(k, n, h);
    const double c = 1.0 / (h * h);
    Stencil1D s;
    const int inner = k == 0 ? 1 : n - 1;
    s.index = {k, inner, 0, 0};
    s.weight = {-2.0 * c, 2.0 * c, 0.0, 0.0};
    s.size = 2;
    return s;
}

Stencil stencil(const Grid& g, Deriv d, int i, int j) {
    const int n = g.n();
    const double h = g.h();
    Stencil s;
    auto along_x1 = [&](const Stencil1D& a) {
        for (int k = 0; k < a.size; ++k) s.add(g.index(a.index[k], j), a.weight[k]);
    };
    auto along_x2 = [&](const Stencil1D& a) {
        for (int k = 0; k < a.size; ++k) s.add(g.index(i, a.index[k]), a.weight[k]);
    };
    switch (d) {
    case Deriv::Identity: s.add(g.index(i, j), 1.0); break;
    case Deriv::D1: along_x1(first_derivative_1d(i, n, h)); break;
    case Deriv::D2: along_x2(first_derivative_1d(j, n, h)); break;
    case Deriv::D11: along_x1(second_derivative_1d(i, n, h)); break;
    case Deriv::D22: along_x2(second_derivative_1d(j, n, h)); break;
    case Deriv::D1Upwind: along_x1(upwind_derivative_1d(i, n, h)); break;
    case Deriv::D11Mirror: along_x1(mirror_second_derivative_1d(i, n, h)); break;
    case Deriv::D22Mirror: along_x2(mirror_second_derivative_1d(j, n, h)); break;
    case Deriv::D12: {
        const Stencil1D a = first_derivative_1d(i, n, h);
        const Stencil1D b = first_derivative_1d(j, n, h);
        for (int p = 0; p < a.size; ++p)
            for (int q = 0; q < b.size; ++q)
                s.add(g.index(a.index[p], b.index[q]), a.weight[p] * b.weight[q]);
        break;
    }
    }
    return s;
}

} // namespace cns
