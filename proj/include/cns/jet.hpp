#pragma once

#include <cmath>

namespace cns {

/// Value, gradient and Hessian of a function of (x1, x2), propagated
/// exactly through arithmetic (second-order forward differentiation).
struct Jet {
    double v = 0.0;
    double d1 = 0.0, d2 = 0.0;
    double d11 = 0.0, d12 = 0.0, d22 = 0.0;

    constexpr Jet() = default;
    constexpr Jet(double c) : v(c) {} // NOLINT: constants promote implicitly

    static constexpr Jet x1(double x) { Jet j(x); j.d1 = 1.0; return j; }
    static constexpr Jet x2(double y) { Jet j(y); j.d2 = 1.0; return j; }

    double laplacian() const { return d11 + d22; }
};

inline Jet operator+(Jet a, const Jet& b) {
    a.v += b.v; a.d1 += b.d1; a.d2 += b.d2;
    a.d11 += b.d11; a.d12 += b.d12; a.d22 += b.d22;
    return a;
}
inline Jet operator-(Jet a, const Jet& b) {
    a.v -= b.v; a.d1 -= b.d1; a.d2 -= b.d2;
    a.d11 -= b.d11; a.d12 -= b.d12; a.d22 -= b.d22;
    return a;
}
inline Jet operator-(const Jet& a) { return Jet{} - a; }
inline Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    r.v = a.v * b.v;
    r.d1 = a.d1 * b.v + a.v * b.d1;
    r.d2 = a.d2 * b.v + a.v * b.d2;
    r.d11 = a.d11 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d11;
    r.d12 = a.d12 * b.v + a.d1 * b.d2 + a.d2 * b.d1 + a.v * b.d12;
    r.d22 = a.d22 * b.v + 2.0 * a.d2 * b.d2 + a.v * b.d22;
    return r;
}

/// g(a) for a scalar function with derivatives g0 = g(a.v), g1 = g', g2 = g''.
inline Jet chain(const Jet& a, double g0, double g1, double g2) {
    Jet r;
    r.v = g0;
    r.d1 = g1 * a.d1;
    r.d2 = g1 * a.d2;
    r.d11 = g2 * a.d1 * a.d1 + g1 * a.d11;
    r.d12 = g2 * a.d1 * a.d2 + g1 * a.d12;
    r.d22 = g2 * a.d2 * a.d2 + g1 * a.d22;
    return r;
}

inline Jet inverse(const Jet& a) {
    const double i = 1.0 / a.v;
    return chain(a, i, -i * i, 2.0 * i * i * i);
}
inline Jet operator/(const Jet& a, const Jet& b) { return a * inverse(b); }
inline Jet sin(const Jet& a) { return chain(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v)); }
inline Jet cos(const Jet& a) { return chain(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v)); }
inline Jet exp(const Jet& a) {
    const double e = std::exp(a.v);
    return chain(a, e, e, e);
}
inline Jet pow(const Jet& a, double k) {
    return chain(a, std::pow(a.v, k), k * std::pow(a.v, k - 1.0),
                 k * (k - 1.0) * std::pow(a.v, k - 2.0));
}

} // namespace cns
