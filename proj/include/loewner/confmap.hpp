#pragma once

#include "loewner/curve.hpp"
#include "loewner/maps.hpp"

namespace loewner {

// Chart of the complement of an open simple arc: C-hat minus arc -> H, tail
// endpoint -> 0, head endpoint -> infinity (unique up to positive scaling).
// The arc is consumed at its sampling resolution: the first span is treated
// as a straight cut and the remaining samples are absorbed by geodesic
// up-steps.
ConformalChart map_arc_complement(const std::vector<SpherePoint>& arc);

// Both disk charts of a Jordan curve, with boundary data per original sample.
struct DiskCharts {
    ConformalChart f;  // unit disk -> Omega (bounded side)
    ConformalChart g;  // exterior disk -> Omega* (unbounded side), g(inf) = inf
    ConformalChart to_h_in;   // Omega -> H (full zipper chain)
    ConformalChart to_h_out;  // Omega* -> H
    std::vector<double> theta;    // f-side boundary angle of sample i
    std::vector<double> psi;      // g-side boundary angle of sample i
    std::vector<double> bnd_in;   // boundary position of sample i under to_h_in
    std::vector<double> bnd_out;  // and under to_h_out
    double ray_foot = 0.0;        // diagnostic: foot of the terminal ray
};

DiskCharts disk_charts_from_curve(const CurvePolyline& curve);

// Chart of the Jordan domain bounded by `boundary` that contains
// `interior_hint`, sending boundary sample ia -> 0 and ib -> infinity.
ConformalChart jordan_domain_chart(const CurvePolyline& boundary, std::size_t ia,
                                   std::size_t ib, const SpherePoint& interior_hint);

// Pullback of the positive imaginary axis through a chart onto (H; 0, inf)
// with a -> 0, b -> infinity; sampled logarithmically in height. The exact
// prime ends a and b are appended as first/last samples.
CurvePolyline hyperbolic_geodesic(const ConformalChart& chart, const SpherePoint& a,
                                  const SpherePoint& b, std::size_t samples,
                                  double y_min = 1e-10, double y_max = 1e10,
                                  double cluster = 2.5);

// Deterministic interior point of the bounded side of a closed finite curve.
SpherePoint interior_point(const CurvePolyline& curve);

// Moebius moving a point set (possibly through infinity) onto a bounded,
// unit-scale region. Identity-like (affine) when the input is already tame.
MobiusComplex normalize_bounded(const std::vector<SpherePoint>& pts);

}  // namespace loewner
