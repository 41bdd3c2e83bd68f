#include "loewner/mobius.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace loewner {

namespace {

// Canonical sign for the +/- matrix class: first entry (in a,b,c,d order)
// with modulus above tolerance gets Re > 0, or Im > 0 when Re ~ 0.
template <typename T>
void canonical_sign(T& a, T& b, T& c, T& d) {
    std::array<T*, 4> e{&a, &b, &c, &d};
    for (T* p : e) {
        double re, im;
        if constexpr (std::is_same_v<T, double>) {
            re = *p;
            im = 0.0;
        } else {
            re = p->real();
            im = p->imag();
        }
        if (std::abs(re) < 1e-13 && std::abs(im) < 1e-13) continue;
        bool flip = (std::abs(re) > 1e-13) ? (re < 0) : (im < 0);
        if (flip)
            for (T* q : e) *q = -*q;
        return;
    }
}

}  // namespace

MobiusComplex::MobiusComplex(cplx a_, cplx b_, cplx c_, cplx d_)
    : a(a_), b(b_), c(c_), d(d_) {
    cplx det = a * d - b * c;
    if (std::abs(det) < 1e-300)
        throw validation_error("mobius: degenerate coefficient matrix (det = 0)");
    cplx s = std::sqrt(det);
    a /= s;
    b /= s;
    c /= s;
    d /= s;
    canonical_sign(a, b, c, d);
}

SpherePoint MobiusComplex::apply(const SpherePoint& p) const {
    if (p.at_inf) {
        if (std::abs(c) == 0.0) return SpherePoint::infinity();
        return SpherePoint(a / c);
    }
    cplx num = a * p.z + b;
    cplx den = c * p.z + d;
    if (std::abs(den) == 0.0) return SpherePoint::infinity();
    // Guard against overflow for very large inputs: evaluate via 1/z.
    if (std::abs(p.z) > 1e12) {
        cplx w = 1.0 / p.z;
        cplx num2 = a + b * w;
        cplx den2 = c + d * w;
        if (std::abs(den2) == 0.0) return SpherePoint::infinity();
        return SpherePoint(num2 / den2);
    }
    return SpherePoint(num / den);
}

MobiusComplex compose(const MobiusComplex& m, const MobiusComplex& n) {
    return MobiusComplex(m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                         m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d);
}

MobiusReal::MobiusReal(double a_, double b_, double c_, double d_)
    : a(a_), b(b_), c(c_), d(d_) {
    double det = a * d - b * c;
    if (det <= 0)
        throw validation_error("mobius: real coefficients must have positive determinant");
    double s = std::sqrt(det);
    a /= s;
    b /= s;
    c /= s;
    d /= s;
    canonical_sign(a, b, c, d);
}

SpherePoint MobiusReal::apply(const SpherePoint& p) const {
    return complexified().apply(p);
}

double MobiusReal::apply_boundary(double t) const {
    if (std::isinf(t)) {
        if (c == 0.0) return std::numeric_limits<double>::infinity();
        return a / c;
    }
    double den = c * t + d;
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    return (a * t + b) / den;
}

double MobiusReal::apply_angle(double theta) const {
    // Work on the unit circle via the Cayley conjugation to avoid the pole of
    // the boundary coordinate.
    cplx u = std::polar(1.0, theta);
    // t = -cot(theta/2) corresponds to u = e^{i theta}; boundary map then back.
    // Conjugated action: u -> C(M(C^{-1}(u))) with C(x) = (x-i)/(x+i).
    // C^{-1}(u) = i(1+u)/(1-u).
    cplx one{1.0, 0.0};
    cplx i{0.0, 1.0};
    cplx x_num = i * (one + u);
    cplx x_den = one - u;
    // M as acting on homogeneous coordinates avoids the intermediate infinity.
    cplx num = a * x_num + b * x_den;
    cplx den = c * x_num + d * x_den;
    cplx w = (num - i * den) / (num + i * den);
    return wrap_angle(std::arg(w));
}

double MobiusReal::angle_deriv(double theta) const {
    // |h'(theta)| for the circle action; positive since orientation preserving.
    // With t = -cot(theta/2): dh/dtheta = M'(t) * t'(theta) / t'(h(theta)).
    double t = angle_to_boundary(theta);
    double ht = apply_angle(theta);
    auto tprime = [](double th) {
        double s = std::sin(th / 2.0);
        return 0.5 / (s * s);
    };
    if (std::isinf(t) || std::isinf(angle_to_boundary(ht))) {
        // rotate the chart by pi and evaluate there
        MobiusReal rot(std::cos(kPi / 4), -std::sin(kPi / 4), std::sin(kPi / 4),
                       std::cos(kPi / 4));
        MobiusReal conj = compose(rot, compose(*this, rot.inverse()));
        return conj.angle_deriv(wrap_angle(theta + kPi / 2.0));
    }
    double den = c * t + d;
    double mprime = 1.0 / (den * den);
    return mprime * tprime(theta) / tprime(ht);
}

MobiusReal compose(const MobiusReal& m, const MobiusReal& n) {
    return MobiusReal(m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                      m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d);
}

double angle_to_boundary(double theta) {
    theta = wrap_angle(theta);
    if (theta == 0.0) return std::numeric_limits<double>::infinity();
    return -1.0 / std::tan(theta / 2.0);
}

double boundary_to_angle(double t) {
    if (std::isinf(t)) return 0.0;
    return wrap_angle(2.0 * std::atan2(1.0, -t));
}

double Circline::dist(const SpherePoint& p) const {
    if (p.at_inf) return is_line ? 0.0 : std::numeric_limits<double>::infinity();
    if (is_line) {
        cplx v = p.z - point;
        return std::abs(v.real() * (-dir.imag()) + v.imag() * dir.real());
    }
    return std::abs(std::abs(p.z - center) - radius);
}

bool Circline::contains(const SpherePoint& p, double tol) const {
    return dist(p) < tol;
}

cplx Circline::tangent_at(const cplx& p) const {
    if (is_line) return dir;
    cplx r = p - center;
    cplx t = cplx(0.0, 1.0) * r;  // counterclockwise tangent
    double n = std::abs(t);
    return n > 0 ? t / n : cplx(1.0, 0.0);
}

SpherePoint mobius_apply(const MobiusComplex& m, const SpherePoint& z) {
    return m.apply(z);
}

namespace {

void require_distinct(const SpherePoint& p1, const SpherePoint& p2,
                      const SpherePoint& p3, const char* who) {
    if (chordal_dist(p1, p2) < 1e-14 || chordal_dist(p1, p3) < 1e-14 ||
        chordal_dist(p2, p3) < 1e-14)
        throw validation_error(std::string(who) + ": degenerate triple (coincident points)");
}

// Moebius sending (p1,p2,p3) -> (0,1,inf).
MobiusComplex to_standard_triple(const SpherePoint& p1, const SpherePoint& p2,
                                 const SpherePoint& p3) {
    // z -> (z-p1)(p2-p3) / ((z-p3)(p2-p1)), with the inf cases reduced.
    if (p1.at_inf) return MobiusComplex(0, p2.z - p3.z, 1, -p3.z);
    if (p2.at_inf) return MobiusComplex(1, -p1.z, 1, -p3.z);
    if (p3.at_inf) return MobiusComplex(1, -p1.z, 0, p2.z - p1.z);
    return MobiusComplex(p2.z - p3.z, -p1.z * (p2.z - p3.z), p2.z - p1.z,
                         -p3.z * (p2.z - p1.z));
}

}  // namespace

MobiusComplex mobius_from_triple(const SpherePoint& p1, const SpherePoint& p2,
                                 const SpherePoint& p3, const SpherePoint& q1,
                                 const SpherePoint& q2, const SpherePoint& q3) {
    require_distinct(p1, p2, p3, "mobius_from_triple");
    require_distinct(q1, q2, q3, "mobius_from_triple");
    MobiusComplex s = to_standard_triple(p1, p2, p3);
    MobiusComplex t = to_standard_triple(q1, q2, q3);
    return compose(t.inverse(), s);
}

MobiusReal mobius_real_from_angles(double x1, double x2, double x3, double y1,
                                   double y2, double y3) {
    SpherePoint px[3], py[3];
    double xs[3] = {x1, x2, x3}, ys[3] = {y1, y2, y3};
    for (int i = 0; i < 3; ++i) {
        double tx = angle_to_boundary(xs[i]);
        double ty = angle_to_boundary(ys[i]);
        px[i] = std::isinf(tx) ? SpherePoint::infinity() : SpherePoint(tx, 0.0);
        py[i] = std::isinf(ty) ? SpherePoint::infinity() : SpherePoint(ty, 0.0);
    }
    MobiusComplex m = mobius_from_triple(px[0], px[1], px[2], py[0], py[1], py[2]);
    double a = m.a.real(), b = m.b.real(), c = m.c.real(), d = m.d.real();
    if (std::abs(m.a.imag()) + std::abs(m.b.imag()) + std::abs(m.c.imag()) +
            std::abs(m.d.imag()) >
        1e-9 * (std::abs(a) + std::abs(b) + std::abs(c) + std::abs(d) + 1.0))
        throw numeric_error("mobius_real_from_angles: triple does not define a real map");
    if (a * d - b * c < 0)
        throw validation_error(
            "mobius_real_from_angles: pairs reverse orientation (no PSL(2,R) map)");
    return MobiusReal(a, b, c, d);
}

int orientation_triple(double theta1, double theta2, double theta3) {
    double d12 = wrap_angle(theta2 - theta1);
    double d13 = wrap_angle(theta3 - theta1);
    if (d12 < 1e-14 || d13 < 1e-14 || std::abs(d12 - d13) < 1e-14)
        throw validation_error("orientation_triple: degenerate triple");
    return d12 < d13 ? +1 : -1;
}

Circline circline_through(const SpherePoint& p1, const SpherePoint& p2,
                          const SpherePoint& p3) {
    require_distinct(p1, p2, p3, "circline_through");
    // A point at infinity forces a line through the two finite points.
    auto line_through = [](cplx u, cplx v) {
        Circline c;
        c.is_line = true;
        c.point = u;
        c.dir = (v - u) / std::abs(v - u);
        return c;
    };
    if (p1.at_inf) return line_through(p2.z, p3.z);
    if (p2.at_inf) return line_through(p1.z, p3.z);
    if (p3.at_inf) return line_through(p1.z, p2.z);

    cplx z1 = p1.z, z2 = p2.z, z3 = p3.z;
    // Perpendicular bisector intersection; fall back to a line when collinear.
    cplx d1 = z2 - z1, d2 = z3 - z1;
    double det = d1.real() * d2.imag() - d1.imag() * d2.real();
    double scale = std::abs(d1) * std::abs(d2);
    if (std::abs(det) < 1e-13 * scale) return line_through(z1, z2);
    double r1 = 0.5 * (std::norm(z2) - std::norm(z1));
    double r2 = 0.5 * (std::norm(z3) - std::norm(z1));
    // Solve [d1.re d1.im; d2.re d2.im] * center = (r1, r2).
    double cx = (r1 * d2.imag() - r2 * d1.imag()) / det;
    double cy = (d1.real() * r2 - d2.real() * r1) / det;
    Circline c;
    c.center = cplx(cx, cy);
    c.radius = std::abs(z1 - c.center);
    return c;
}

cplx cross_ratio(const SpherePoint& z1, const SpherePoint& z2,
                 const SpherePoint& z3, const SpherePoint& z4) {
    auto diff = [](const SpherePoint& a, const SpherePoint& b) -> std::optional<cplx> {
        if (a.at_inf || b.at_inf) return std::nullopt;  // handled by cancellation
        return a.z - b.z;
    };
    // (z1-z3)(z2-z4) / ((z1-z4)(z2-z3)); each infinity cancels one factor pair.
    auto n1 = diff(z1, z3), n2 = diff(z2, z4), d1 = diff(z1, z4), d2 = diff(z2, z3);
    cplx num{1.0, 0.0}, den{1.0, 0.0};
    if (z1.at_inf) {
        num = n2 ? *n2 : cplx{1.0};
        den = d2 ? *d2 : cplx{1.0};
    } else if (z2.at_inf) {
        num = n1 ? *n1 : cplx{1.0};
        den = d1 ? *d1 : cplx{1.0};
    } else if (z3.at_inf) {
        num = n2 ? *n2 : cplx{1.0};
        den = d1 ? *d1 : cplx{1.0};
    } else if (z4.at_inf) {
        num = n1 ? *n1 : cplx{1.0};
        den = d2 ? *d2 : cplx{1.0};
    } else {
        num = *n1 * *n2;
        den = *d1 * *d2;
    }
    if (std::abs(den) == 0.0) return cplx(std::numeric_limits<double>::infinity(), 0.0);
    return num / den;
}

}  // namespace loewner
