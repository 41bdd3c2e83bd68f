#pragma once

#include <cmath>

#include "loewner/common.hpp"

namespace loewner {

// A point of the Riemann sphere: a finite complex value or the point at
// infinity. All comparisons go through the chordal metric so infinity is an
// ordinary point.
struct SpherePoint {
    cplx z{0.0, 0.0};
    bool at_inf = false;

    SpherePoint() = default;
    SpherePoint(double re, double im) : z(re, im) {}
    SpherePoint(cplx v) : z(v) {}  // NOLINT: implicit by design

    static SpherePoint infinity() {
        SpherePoint p;
        p.at_inf = true;
        return p;
    }

    bool finite() const { return !at_inf; }
};

// Chordal (stereographic) distance; range [0, 2].
inline double chordal_dist(const SpherePoint& a, const SpherePoint& b) {
    if (a.at_inf && b.at_inf) return 0.0;
    if (a.at_inf) return 2.0 / std::sqrt(1.0 + std::norm(b.z));
    if (b.at_inf) return 2.0 / std::sqrt(1.0 + std::norm(a.z));
    return 2.0 * std::abs(a.z - b.z) /
           std::sqrt((1.0 + std::norm(a.z)) * (1.0 + std::norm(b.z)));
}

inline bool chordal_close(const SpherePoint& a, const SpherePoint& b, double tol) {
    return chordal_dist(a, b) < tol;
}

// Stereographic projection onto the unit 2-sphere in R^3 (chordal distance is
// the Euclidean distance between images).
inline void to_sphere3(const SpherePoint& p, double out[3]) {
    if (p.at_inf) {
        out[0] = 0.0;
        out[1] = 0.0;
        out[2] = 1.0;
        return;
    }
    double n = std::norm(p.z);
    double d = 1.0 + n;
    out[0] = 2.0 * p.z.real() / d;
    out[1] = 2.0 * p.z.imag() / d;
    out[2] = (n - 1.0) / d;
}

}  // namespace loewner
