#pragma once

#include <optional>
#include <vector>

#include "loewner/sphere.hpp"

namespace loewner {

// Complex Moebius transformation z -> (az+b)/(cz+d), normalized ad-bc = 1 and
// identified with its negation. The canonical representative of the +/- class
// makes the first entry of (a,b,c,d) with nonzero modulus have positive real
// part (positive imaginary part if the real part vanishes).
struct MobiusComplex {
    cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

    MobiusComplex() = default;
    MobiusComplex(cplx a_, cplx b_, cplx c_, cplx d_);

    static MobiusComplex identity() { return {}; }

    SpherePoint apply(const SpherePoint& p) const;
    MobiusComplex inverse() const { return MobiusComplex(d, -b, -c, a); }

    // d/dz at a finite non-pole point.
    cplx deriv(cplx z) const {
        cplx den = c * z + d;
        return 1.0 / (den * den);
    }
};

MobiusComplex compose(const MobiusComplex& m, const MobiusComplex& n);

// Real Moebius transformation, det = 1: preserves the upper half-plane and
// acts on RP^1. RP^1 is stored as an angle theta in [0, 2pi) on the unit
// circle; the boundary coordinate is t = -cot(theta/2) (inverse Cayley).
struct MobiusReal {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    MobiusReal() = default;
    MobiusReal(double a_, double b_, double c_, double d_);

    static MobiusReal identity() { return {}; }

    SpherePoint apply(const SpherePoint& p) const;

    // Action on the boundary coordinate t in R u {inf}.
    double apply_boundary(double t) const;
    // Action on the circle angle.
    double apply_angle(double theta) const;
    // Derivative d h(theta)/d theta of the circle action.
    double angle_deriv(double theta) const;

    MobiusReal inverse() const { return MobiusReal(d, -b, -c, a); }
    MobiusComplex complexified() const { return MobiusComplex(a, b, c, d); }
};

MobiusReal compose(const MobiusReal& m, const MobiusReal& n);

// Conversions between the circle angle and the RP^1 boundary coordinate.
double angle_to_boundary(double theta);   // t = -cot(theta/2); theta=0 -> inf
double boundary_to_angle(double t);       // inverse of the above

// A circle or a line on the sphere (lines are circles through infinity).
struct Circline {
    bool is_line = false;
    cplx center{0.0};    // circle case
    double radius = 1.0;
    cplx point{0.0};     // line case: a point on it
    cplx dir{1.0};       // line case: unit direction

    double dist(const SpherePoint& p) const;  // Euclidean distance; inf -> distance on line = 0
    bool contains(const SpherePoint& p, double tol = 1e-9) const;
    cplx tangent_at(const cplx& p) const;  // unit tangent (orientation of increasing angle / dir)
};

// ---- operations -----------------------------------------------------------

SpherePoint mobius_apply(const MobiusComplex& m, const SpherePoint& z);

// Unique Moebius sending (p1,p2,p3) -> (q1,q2,q3). Throws validation_error on
// coincident points (chordal distance below 1e-14).
MobiusComplex mobius_from_triple(const SpherePoint& p1, const SpherePoint& p2,
                                 const SpherePoint& p3, const SpherePoint& q1,
                                 const SpherePoint& q2, const SpherePoint& q3);

// Real Moebius through three boundary-angle pairs.
MobiusReal mobius_real_from_angles(double x1, double x2, double x3, double y1,
                                   double y2, double y3);

// +1 when the angle triple is counterclockwise on the circle, -1 otherwise.
int orientation_triple(double theta1, double theta2, double theta3);

// The circline through three distinct sphere points.
Circline circline_through(const SpherePoint& p1, const SpherePoint& p2,
                          const SpherePoint& p3);

// Cross-ratio (z1-z3)(z2-z4) / ((z1-z4)(z2-z3)) with the usual limits at inf.
cplx cross_ratio(const SpherePoint& z1, const SpherePoint& z2,
                 const SpherePoint& z3, const SpherePoint& z4);

}  // namespace loewner
