#include "loewner/maps.hpp"

#include <algorithm>
#include <cmath>

namespace loewner {

namespace {

// Boundary values computed on R carry Im = -0.0 after rounding; principal
// branches must see the upper side.
inline cplx upper(cplx z) {
    if (z.imag() == 0.0) return cplx(z.real(), 0.0);
    return z;
}

inline cplx psqrt(cplx z) { return std::sqrt(upper(z)); }

inline cplx ppow(cplx z, double beta) {
    z = upper(z);
    if (z == cplx(0.0, 0.0)) return cplx(0.0, 0.0);
    return std::exp(beta * std::log(z));
}

// Straightened vertical-slit map sqrt(z^2 + h^2) written so the branch follows
// the factor z: correct on all of H minus the slit and on both real rays.
inline cplx slit_up(cplx z, double h) {
    return z * psqrt(1.0 + (h * h) / (z * z));
}

inline cplx slit_down(cplx w, double h) {
    return w * psqrt(1.0 - (h * h) / (w * w));
}

}  // namespace

Jet compose_jets(const Jet& outer, const Jet& inner) {
    Jet out;
    out.v = outer.v;
    out.d1 = outer.d1 * inner.d1;
    out.d2 = outer.d2 * inner.d1 * inner.d1 + outer.d1 * inner.d2;
    out.d3 = outer.d3 * inner.d1 * inner.d1 * inner.d1 +
             3.0 * outer.d2 * inner.d1 * inner.d2 + outer.d1 * inner.d3;
    return out;
}

Jet invert_jet(const Jet& fwd, cplx pre) {
    cplx f1 = fwd.d1;
    if (std::abs(f1) == 0.0) throw numeric_error("invert_jet: critical point");
    Jet out;
    out.v = pre;
    out.d1 = 1.0 / f1;
    out.d2 = -fwd.d2 / (f1 * f1 * f1);
    out.d3 = (3.0 * fwd.d2 * fwd.d2 - f1 * fwd.d3) / (f1 * f1 * f1 * f1 * f1);
    return out;
}

ElementaryMap ElementaryMap::make_mobius(const MobiusComplex& m) {
    ElementaryMap e;
    e.kind = Kind::mobius;
    e.mob = m;
    return e;
}

ElementaryMap ElementaryMap::make_geodesic(double base, cplx zeta) {
    if (!(zeta.imag() > 0))
        throw numeric_error("geodesic step: target point left the upper half-plane");
    ElementaryMap e;
    e.kind = Kind::geodesic_arc;
    e.base = base;
    double n2 = std::norm(zeta);
    // near-vertical slits are classified as vertical: the driving increment
    // this discards is ~1.5*|Re zeta|, far below the discretization error,
    // and it avoids the badly scaled far foot c = |zeta|^2 / Re zeta
    if (std::abs(zeta.real()) <= 1e-9 * std::abs(zeta)) {
        e.vertical = true;
        e.hpar = zeta.imag();
        e.cap = e.hpar * e.hpar / 4.0;
        e.drive = 0.0;
        return e;
    }
    double c = n2 / zeta.real();
    double h = n2 / zeta.imag();
    double r = std::hypot(c, h);
    e.cpar = c;
    e.hpar = h;
    e.rpar = r;
    e.sigma = (c > 0) ? -1.0 : 1.0;
    e.acoef = e.sigma * c * c * c / r;
    e.pcoef = c * (1.0 + h * h / (2.0 * r * r));
    e.cap = c * c * h * h * (h * h + 2.0 * c * c) / (8.0 * r * r * r * r);
    e.drive = 1.5 * c * h * h / (r * r);
    return e;
}

ElementaryMap ElementaryMap::make_tilted(double base, double dw, double dt) {
    if (!(dt > 0)) throw numeric_error("tilted step: capacity increment must be positive");
    ElementaryMap e;
    e.kind = Kind::tilted_slit;
    e.base = base;
    e.spar = std::sqrt(dw * dw + 16.0 * dt);
    e.alpha = 0.5 * (1.0 - dw / e.spar);
    e.cap = dt;
    e.drive = dw;
    return e;
}

ElementaryMap ElementaryMap::make_sqrt() {
    ElementaryMap e;
    e.kind = Kind::sqrt_map;
    return e;
}

ElementaryMap ElementaryMap::make_square() {
    ElementaryMap e;
    e.kind = Kind::square_map;
    return e;
}

SpherePoint ElementaryMap::apply(const SpherePoint& p) const {
    switch (kind) {
        case Kind::mobius:
            return mob.apply(p);
        case Kind::geodesic_arc: {
            if (p.at_inf) return p;
            cplx zeta = upper(p.z - base);
            if (zeta == cplx(0.0, 0.0))
                throw numeric_error("geodesic map: evaluation at the slit base is two-sided");
            if (vertical) return SpherePoint(base + slit_up(zeta, hpar));
            cplx den = cpar - zeta;
            if (std::abs(den) == 0.0) return SpherePoint(base + pcoef);
            cplx v = slit_up(cpar * zeta / den, hpar);
            return SpherePoint(base + pcoef + acoef / (v - sigma * rpar));
        }
        case Kind::tilted_slit: {
            if (p.at_inf) return p;
            cplx zeta = upper(p.z - base);
            double a_off = alpha * spar, b_off = (1.0 - alpha) * spar;
            cplx w = ppow(zeta + a_off, 1.0 - alpha) * ppow(zeta - b_off, alpha);
            return SpherePoint(base + w);
        }
        case Kind::sqrt_map:
            if (p.at_inf) return p;
            return SpherePoint(psqrt(p.z));
        case Kind::square_map:
            if (p.at_inf) return p;
            return SpherePoint(p.z * p.z);
    }
    throw numeric_error("elementary map: unknown kind");
}

SpherePoint ElementaryMap::apply_inverse(const SpherePoint& p) const {
    switch (kind) {
        case Kind::mobius:
            return mob.inverse().apply(p);
        case Kind::geodesic_arc: {
            if (p.at_inf) return p;
            cplx u = upper(p.z - base);
            if (vertical) return SpherePoint(base + slit_down(u, hpar));
            if (std::abs(u - pcoef) == 0.0) return SpherePoint::infinity();
            cplx v = sigma * rpar + acoef / (u - pcoef);
            cplx zeta = slit_down(v, hpar);
            cplx den = cpar + zeta;
            if (std::abs(den) == 0.0) return SpherePoint::infinity();
            return SpherePoint(base + cpar * zeta / den);
        }
        case Kind::tilted_slit:
            throw numeric_error("tilted slit map has no closed-form inverse");
        case Kind::sqrt_map:
            if (p.at_inf) return p;
            return SpherePoint(p.z * p.z);
        case Kind::square_map:
            if (p.at_inf) return p;
            return SpherePoint(psqrt(p.z));
    }
    throw numeric_error("elementary map: unknown kind");
}

double ElementaryMap::apply_real(double x) const {
    if (kind == Kind::mobius) {
        SpherePoint q = mob.apply(std::isinf(x) ? SpherePoint::infinity()
                                                : SpherePoint(x, 0.0));
        return q.at_inf ? std::numeric_limits<double>::infinity() : q.z.real();
    }
    if (kind != Kind::geodesic_arc)
        throw numeric_error("apply_real: only geodesic and mobius maps act on R");
    if (std::isinf(x)) return x;
    double t = x - base;
    if (vertical) {
        double v = (t >= 0 ? 1.0 : -1.0) * std::hypot(t, hpar);
        return base + v;
    }
    if (t == cpar) return base + pcoef;
    double m = cpar * t / (cpar - t);
    double v = (m >= 0 ? 1.0 : -1.0) * std::hypot(m, hpar);
    if (std::isinf(v)) return base + pcoef;
    return base + pcoef + acoef / (v - sigma * rpar);
}

Jet ElementaryMap::jet(cplx z) const {
    switch (kind) {
        case Kind::mobius: {
            cplx den = mob.c * z + mob.d;
            if (std::abs(den) < 1e-150) throw numeric_error("jet through a mobius pole");
            Jet j;
            j.v = (mob.a * z + mob.b) / den;
            cplx den2 = den * den;
            j.d1 = 1.0 / den2;
            j.d2 = -2.0 * mob.c / (den2 * den);
            j.d3 = 6.0 * mob.c * mob.c / (den2 * den2);
            return j;
        }
        case Kind::geodesic_arc: {
            cplx zeta = upper(z - base);
            Jet acc{zeta, 1.0, 0.0, 0.0};
            if (!vertical) {
                cplx den = cpar - zeta;
                if (std::abs(den) == 0.0) throw numeric_error("jet through the geodesic pole");
                Jet jm;
                jm.v = cpar * zeta / den;
                cplx c2 = cplx(cpar * cpar, 0.0);
                jm.d1 = c2 / (den * den);
                jm.d2 = 2.0 * c2 / (den * den * den);
                jm.d3 = 6.0 * c2 / (den * den * den * den);
                acc = compose_jets(jm, acc);
            }
            {
                cplx x = acc.v;
                cplx V = slit_up(x, hpar);
                if (std::abs(V) == 0.0) throw numeric_error("jet at the slit tip");
                Jet jv;
                jv.v = V;
                jv.d1 = x / V;
                jv.d2 = hpar * hpar / (V * V * V);
                jv.d3 = -3.0 * hpar * hpar * x / (V * V * V * V * V);
                acc = compose_jets(jv, acc);
            }
            if (!vertical) {
                cplx den = acc.v - sigma * rpar;
                if (std::abs(den) == 0.0) throw numeric_error("jet through the normalizer pole");
                Jet jn;
                jn.v = pcoef + acoef / den;
                jn.d1 = -acoef / (den * den);
                jn.d2 = 2.0 * acoef / (den * den * den);
                jn.d3 = -6.0 * acoef / (den * den * den * den);
                acc = compose_jets(jn, acc);
            }
            acc.v += base;
            return acc;
        }
        case Kind::tilted_slit: {
            cplx zeta = upper(z - base);
            double a_off = alpha * spar, b_off = (1.0 - alpha) * spar;
            cplx u = zeta + a_off, w = zeta - b_off;
            if (std::abs(u) == 0.0 || std::abs(w) == 0.0)
                throw numeric_error("jet at a slit foot");
            cplx val = ppow(u, 1.0 - alpha) * ppow(w, alpha);
            cplx L = (1.0 - alpha) / u + alpha / w;
            cplx L1 = -(1.0 - alpha) / (u * u) - alpha / (w * w);
            cplx L2 = 2.0 * (1.0 - alpha) / (u * u * u) + 2.0 * alpha / (w * w * w);
            Jet j;
            j.v = base + val;
            j.d1 = val * L;
            j.d2 = val * (L * L + L1);
            j.d3 = val * (L * L * L + 3.0 * L * L1 + L2);
            return j;
        }
        case Kind::sqrt_map: {
            cplx w = psqrt(z);
            if (std::abs(w) == 0.0) throw numeric_error("jet at the sqrt branch point");
            Jet j;
            j.v = w;
            j.d1 = 0.5 / w;
            j.d2 = -0.25 / (w * w * w);
            j.d3 = 0.375 / (w * w * w * w * w);
            return j;
        }
        case Kind::square_map: {
            Jet j;
            j.v = z * z;
            j.d1 = 2.0 * z;
            j.d2 = 2.0;
            j.d3 = 0.0;
            return j;
        }
    }
    throw numeric_error("elementary map: unknown kind");
}

double ElementaryMap::scar_left() const {
    if (kind != Kind::geodesic_arc) throw numeric_error("scar of a non-geodesic map");
    if (vertical) return base - hpar;
    return base + pcoef + acoef / (-hpar - sigma * rpar);
}

double ElementaryMap::scar_right() const {
    if (kind != Kind::geodesic_arc) throw numeric_error("scar of a non-geodesic map");
    if (vertical) return base + hpar;
    return base + pcoef + acoef / (hpar - sigma * rpar);
}

SpherePoint ConformalChart::map(const SpherePoint& p) const {
    SpherePoint cur = p;
    for (const auto& link : links)
        cur = link.inverted ? link.map.apply_inverse(cur) : link.map.apply(cur);
    return cur;
}

SpherePoint ConformalChart::inverse(const SpherePoint& p) const {
    SpherePoint cur = p;
    for (auto it = links.rbegin(); it != links.rend(); ++it)
        cur = it->inverted ? it->map.apply(cur) : it->map.apply_inverse(cur);
    return cur;
}

Jet ConformalChart::jet(cplx z) const {
    Jet acc{z, 1.0, 0.0, 0.0};
    SpherePoint cur(z);
    for (const auto& link : links) {
        if (cur.at_inf) throw numeric_error("chart jet: orbit passed through infinity");
        Jet lj;
        if (!link.inverted) {
            lj = link.map.jet(cur.z);
            cur = SpherePoint(lj.v);
            if (!std::isfinite(lj.v.real()) || !std::isfinite(lj.v.imag()))
                throw numeric_error("chart jet: orbit passed through infinity");
        } else {
            SpherePoint pre = link.map.apply_inverse(cur);
            if (pre.at_inf) throw numeric_error("chart jet: orbit passed through infinity");
            Jet fwd = link.map.jet(pre.z);
            lj = invert_jet(fwd, pre.z);
            cur = pre;
        }
        acc = compose_jets(lj, acc);
    }
    return acc;
}

ConformalChart ConformalChart::inverted() const {
    ConformalChart out;
    out.links.reserve(links.size());
    for (auto it = links.rbegin(); it != links.rend(); ++it)
        out.links.push_back({it->map, !it->inverted});
    return out;
}

ConformalChart ConformalChart::then(const ConformalChart& next) const {
    ConformalChart out = *this;
    out.links.insert(out.links.end(), next.links.begin(), next.links.end());
    return out;
}

}  // namespace loewner
