#pragma once

#include <vector>

#include "loewner/mobius.hpp"
#include "loewner/sphere.hpp"

namespace loewner {

// Ordered finite sample of a Jordan curve or arc on the sphere. Orientation is
// implied by sample order; marks index distinguished points (roots, the z_k of
// the optimization problems, welding breakpoints).
struct CurvePolyline {
    std::vector<SpherePoint> points;
    bool closed = false;
    std::vector<std::size_t> marks;

    std::size_t size() const { return points.size(); }

    // Arc k of a closed marked curve: samples from marks[k] to marks[k+1]
    // (cyclic), endpoints included.
    std::vector<SpherePoint> arc_between_marks(std::size_t k) const;
    // Everything except arc k, from marks[k+1] around to marks[k].
    std::vector<SpherePoint> complement_of_arc(std::size_t k) const;

    void validate(const char* who) const;  // distinct consecutive points, mark sanity
};

CurvePolyline apply_mobius(const MobiusComplex& m, const CurvePolyline& curve);

// Pairwise segment test at sampling resolution. Requires finite points.
bool is_simple(const CurvePolyline& curve, std::size_t* seg_a = nullptr,
               std::size_t* seg_b = nullptr);

// Total chordal length of the polyline (closing segment included if closed).
double chordal_length(const CurvePolyline& curve);

// Counterclockwise test for closed finite curves (shoelace > 0).
bool is_counterclockwise(const CurvePolyline& curve);
// Reverses orientation in place, remapping marks.
void reverse_orientation(CurvePolyline& curve);

// Resamples an open polyline to n points by chordal arc length; lambda > 0
// clusters samples toward both endpoints (sinh grading), 0 = uniform.
// Interpolates between vertices: only safe for densely sampled smooth data.
std::vector<SpherePoint> resample_polyline(const std::vector<SpherePoint>& pts,
                                           std::size_t n, double cluster = 0.0);

// Vertex-subset downsample: picks ~n of the existing vertices near arc-length
// targets (endpoints pinned). Never invents points, so it cannot put
// sampling-frequency wiggles on the curve.
std::vector<SpherePoint> downsample_vertices(const std::vector<SpherePoint>& pts,
                                             std::size_t n, double cluster = 0.0);

// Closed curve thinned so every mark stays an exact sample and each arc gets a
// share of the budget proportional to its length (at least min_per_arc).
// Arcs already at or below quota keep all their vertices.
CurvePolyline resample_closed_marked(const CurvePolyline& curve, std::size_t budget,
                                     double cluster = 0.0,
                                     std::size_t min_per_arc = 8);

// Symmetric Hausdorff distance between polylines in the chordal metric;
// distances to segments are refined by golden-section search.
double hausdorff_dist(const std::vector<SpherePoint>& a,
                      const std::vector<SpherePoint>& b, bool a_closed = false,
                      bool b_closed = false);

// Test-curve helpers.
CurvePolyline make_circle(std::size_t n, cplx center = {0, 0}, double radius = 1.0,
                          double phase = 0.0);
// Image of the unit circle under z + coef*z^2 (a smooth quasicircle for
// |coef| < 1/2).
CurvePolyline make_perturbed_circle(std::size_t n, double coef = 0.1);

}  // namespace loewner
