#pragma once

#include "loewner/curve.hpp"
#include "loewner/energy.hpp"

namespace loewner {

// Minimize Loewner energy over Jordan curves through n marked points, within
// the homotopy class represented by the initial polyline, by cyclic
// hyperbolic-geodesic arc replacement.
struct CurveProblem {
    std::vector<SpherePoint> points;  // z_1..z_n, distinct
    CurvePolyline initial;            // passes through each z_k at a mark, in order
    double tol = 1e-3;                // per-arc geodesic residual target
    std::size_t max_sweeps = 30;
    std::size_t arc_budget = 80;      // samples per replaced arc
    std::size_t polish_budget = 0;    // extra final sweep at this density (0 = off)
    bool track_energy = true;
    // energy-trace resolution (kept light; the trace is diagnostic)
    int energy_levels = 8;
    int energy_angular = 128;
    std::size_t energy_budget = 260;

    void validate() const;
};

struct CurveMinimizeResult {
    CurvePolyline curve;
    std::vector<double> energy_trace;  // one entry per replacement step
    std::vector<double> residuals;     // final per-arc geodesic residuals
    bool converged = false;
    std::size_t sweeps = 0;
};

// Replaces arc k by the hyperbolic geodesic of the complement of the rest of
// the curve; all other arcs keep their samples.
CurvePolyline geodesic_replacement_step(const CurvePolyline& curve, std::size_t k,
                                        std::size_t arc_budget = 80);

// Hausdorff distance (chordal) between each arc and the geodesic of its
// complementary domain.
std::vector<double> geodesic_residual(const CurvePolyline& curve);

CurveMinimizeResult minimize_curve(const CurveProblem& problem);

// Test/CLI helper: a closed curve through the given points, each side bulged
// transversally by the matching amplitude (0 = straight polygon).
CurvePolyline initial_through_points(const std::vector<SpherePoint>& points,
                                     std::size_t per_arc,
                                     const std::vector<double>& bumps = {});

// Minimizer certificate: relative gaps |S[f^-1] - S[g^-1]| / max(|.|,|.|)
// sampled near the curve away from the marks (S[.] is insensitive to the
// half-plane normalization, so the raw zipper charts serve directly).
std::vector<double> schwarzian_certificate(const CurvePolyline& curve,
                                           std::size_t per_arc = 20,
                                           double offset_frac = 0.3,
                                           std::size_t chart_budget = 1200);

}  // namespace loewner
