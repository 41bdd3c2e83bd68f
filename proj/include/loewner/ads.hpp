#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "loewner/mobius.hpp"

namespace loewner {

// 2x2 real matrices model R^{2,2}: q(A) = -det(A).
struct Mat2 {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    static Mat2 from_mobius(const MobiusReal& m) { return {m.a, m.b, m.c, m.d}; }
    double det() const { return a * d - b * c; }
    double frob() const { return std::sqrt(a * a + b * b + c * c + d * d); }
};

Mat2 mat_mul(const Mat2& x, const Mat2& y);

// <A,B> = -1/2 Tr(A adj(B)), the polarization of q(A) = -det(A).
double bilinear_22(const Mat2& a, const Mat2& b);

// Orthogonal basis of the (2,2) form: q(id) = q(u) = -1, q(v) = q(w) = +1.
Mat2 basis_id();
Mat2 basis_v();
Mat2 basis_w();
Mat2 basis_u();

// Boundary point of AdS^3 as a pair of RP^1 angles with a rank-one
// representative matrix (image line = x, kernel line = y), normalized to unit
// Frobenius norm with the sign pinned by the first nonzero entry.
struct AdSBoundaryPoint {
    double x = 0.0, y = 0.0;
    Mat2 rep;

    static AdSBoundaryPoint from_angles(double x, double y);
    // Recovers angles from a rank-one matrix; throws when rank != 1.
    static AdSBoundaryPoint from_matrix(const Mat2& m);
};

// Space-like totally geodesic plane P_[alpha] = { [A] : <alpha, A> = 0 };
// its boundary is the graph of alpha^{-1}.
struct SpacelikePlane {
    MobiusReal alpha;
};

// |<alpha, A>| for the rank-one representative A of the boundary point
// (x, alpha^{-1} x); identically zero in exact arithmetic.
double plane_boundary_check(const MobiusReal& alpha, double x);

// (alpha, beta) . (x, y) = (alpha x, beta y); the representative transforms as
// alpha A beta^{-1}. Angles are recovered from the transformed matrix.
AdSBoundaryPoint isometry_act(const MobiusReal& alpha, const MobiusReal& beta,
                              const AdSBoundaryPoint& p);

struct PositivityReport {
    bool positive = true;
    std::size_t witness[3] = {0, 0, 0};  // violating triple when !positive
};

// A closed curve in the AdS boundary is positive when every triple has
// matching orientations in both factors. All triples are enumerated for
// n <= 200; beyond that, seeded random triples are examined.
PositivityReport is_positive_curve(const std::vector<AdSBoundaryPoint>& samples,
                                   std::uint64_t seed = 12345,
                                   std::size_t random_trials = 200000);

struct CircularArcFace {
    Circline circ;
    SpherePoint from, to;
};

struct PleatedPlane {
    enum class Ambient { ads3, h3 };
    Ambient ambient = Ambient::ads3;

    struct Face {
        bool is_triangle = false;
        // AdS3 faces
        SpacelikePlane plane;
        // H3 faces
        Circline circ;
        // boundary data: piece faces span [k, k+1]; triangles list 3 vertices
        std::size_t verts[3] = {0, 0, 0};
    };
    std::vector<Face> faces;
    // bending lines as index pairs into the breakpoint/vertex list
    std::vector<std::pair<std::size_t, std::size_t>> bending;
    std::vector<std::array<std::size_t, 3>> triangulation;  // fan from vertex 0
    // vertices: AdS3 = boundary points; H3 = sphere points
    std::vector<AdSBoundaryPoint> ads_vertices;
    std::vector<SpherePoint> h3_vertices;
};

// Pleated space-like plane in AdS^3 spanned by the graph of a piecewise
// Moebius welding: one plane P_[m_k^{-1}] per piece (its boundary contains the
// piece's graph) plus ideal triangles over a fan triangulation of the
// breakpoints.
PleatedPlane pleat_from_welding(const std::vector<MobiusReal>& pieces,
                                const std::vector<AdSBoundaryPoint>& breakpoints);

// Pleated geodesic plane in H^3 over a C^1 piecewise circular curve: one
// hemisphere per circline plus triangles over the fan triangulation. Joint
// angles more than 0.2 rad away from pi are rejected.
PleatedPlane pleat_from_circular(const std::vector<CircularArcFace>& arcs);

}  // namespace loewner
