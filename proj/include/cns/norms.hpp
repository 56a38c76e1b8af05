#pragma once

#include "cns/fields.hpp"

#include <array>
#include <optional>
#include <vector>

namespace cns {

/// Discrete Lebesgue and Sobolev norms with trapezoidal weights.
///
/// Sobolev norms sum the p-th powers of the L_p norms of the field and of
/// every derivative multi-index up to the requested order (each mixed
/// derivative counted once). Vector fields sum over components.
double lp_norm(const ScalarField& f, double p);
double lp_norm(const VectorField& f, double p);
double sobolev_norm(const ScalarField& f, double p, int order);
double sobolev_norm(const VectorField& f, double p, int order);
inline double h1_norm(const ScalarField& f) { return sobolev_norm(f, 2.0, 1); }
inline double h1_norm(const VectorField& f) { return sobolev_norm(f, 2.0, 1); }

/// L_p part and first tangential difference seminorm of a boundary trace,
/// the discrete stand-in for W^{1-1/p}_p on an edge.
struct TraceNorm {
    double lp = 0.0;
    double seminorm = 0.0;
    double total = 0.0; ///< (lp^p + seminorm^p)^{1/p}
};

TraceNorm edge_trace_norm(const std::vector<double>& values, double h, double p);
TraceNorm boundary_trace_norm(const ScalarField& f, const BoundarySegment& segment, double p);
TraceNorm boundary_trace_norm(const VectorField& f, const BoundarySegment& segment, double p);
/// Whole-boundary norm of edge data, p-th powers summed over the four edges.
TraceNorm boundary_norm(const EdgeField& f, double p);
TraceNorm boundary_norm(const EdgeField& f, Side side, double p);

/// Discrete Sobolev-Slobodeckij seminorm of order s in (0,1):
/// (sum_{x != y} |f(x)-f(y)|^p / |x-y|^{2+sp} w_x w_y)^{1/p}.
double slobodeckij_seminorm(const ScalarField& f, double s, double p);

struct NormReport {
    double lp = 0.0;
    double w1p = 0.0;
    std::optional<double> w2p;
    double h1 = 0.0;
    std::array<double, 4> boundary_lp{}; ///< indexed by Side
};

NormReport norm_report(const ScalarField& f, double p, bool with_second_order);
NormReport norm_report(const VectorField& f, double p, bool with_second_order);

} // namespace cns
