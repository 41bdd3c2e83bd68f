#pragma once

#include <vector>

#include "loewner/mobius.hpp"
#include "loewner/sphere.hpp"

namespace loewner {

// Value and first three derivatives of a map at a point.
struct Jet {
    cplx v{0.0}, d1{1.0}, d2{0.0}, d3{0.0};
};

// outer evaluated at inner.v, composed as functions of the inner variable.
Jet compose_jets(const Jet& outer, const Jet& inner);
// Jet of the inverse function at outer.v given the forward jet (preimage pre).
Jet invert_jet(const Jet& fwd, cplx pre);

inline cplx schwarzian_of(const Jet& j) {
    cplx q = j.d2 / j.d1;
    return j.d3 / j.d1 - 1.5 * q * q;
}

// One invertible elementary conformal map. Canonical ("forward") directions:
//   mobius       z -> (az+b)/(cz+d)
//   geodesic_arc the zipper up-step removing the hyperbolic-geodesic slit
//                from `base` (on R) to base + zeta, hydrodynamically
//                normalized; forward maps H-minus-slit -> H
//   tilted_slit  the down-step H -> H minus a straight slit from `base`,
//                the exact map for square-root driving (forward only)
//   sqrt_map     principal square root
//   square_map   z -> z^2
struct ElementaryMap {
    enum class Kind { mobius, geodesic_arc, tilted_slit, sqrt_map, square_map };
    Kind kind = Kind::mobius;

    MobiusComplex mob;

    // geodesic_arc parameters (vertical = slit orthogonal to R at base)
    double base = 0.0;
    bool vertical = false;
    double cpar = 0.0;   // second foot of the geodesic circle, relative to base
    double hpar = 0.0;   // height of the straightened vertical slit
    double rpar = 0.0;   // sqrt(c^2 + h^2)
    double sigma = 0.0;  // sign carried by the V-branch at the far foot
    double pcoef = 0.0;  // normalizing Moebius: w -> pcoef + acoef / (w - sigma*rpar)
    double acoef = 0.0;
    double cap = 0.0;    // capacity increment (Loewner time dt of the step)
    double drive = 0.0;  // driving value after the step, relative to base

    // tilted_slit parameters
    double alpha = 0.0;  // slit angle / pi
    double spar = 0.0;   // scale; slit length = spar * alpha^alpha (1-alpha)^(1-alpha)

    static ElementaryMap make_mobius(const MobiusComplex& m);
    // Up-step absorbing the point base + zeta (Im zeta > 0).
    static ElementaryMap make_geodesic(double base, cplx zeta);
    // Down-step for a driving increment dw over capacity time dt.
    static ElementaryMap make_tilted(double base, double dw, double dt);
    static ElementaryMap make_sqrt();
    static ElementaryMap make_square();

    SpherePoint apply(const SpherePoint& p) const;
    SpherePoint apply_inverse(const SpherePoint& p) const;
    // Restriction to R of the forward map (geodesic_arc / mobius-real paths);
    // +-inf flows through as the boundary point at infinity.
    double apply_real(double x) const;

    Jet jet(cplx z) const;  // forward jet at a finite point

    // Scar of a geodesic up-step: images of the slit base from the two sides.
    double scar_left() const;
    double scar_right() const;
    double new_driving() const { return base + drive; }
};

// An invertible conformal map represented as a chain of elementary maps, each
// used forward or inverted. Evaluation order is links[0] first.
struct ConformalChart {
    struct Link {
        ElementaryMap map;
        bool inverted = false;
    };
    std::vector<Link> links;

    SpherePoint map(const SpherePoint& p) const;
    SpherePoint inverse(const SpherePoint& p) const;
    Jet jet(cplx z) const;  // forward-direction jet (throws if the orbit hits infinity)

    void push(const ElementaryMap& m, bool inverted = false) {
        links.push_back({m, inverted});
    }
    void push_mobius(const MobiusComplex& m, bool inverted = false) {
        push(ElementaryMap::make_mobius(m), inverted);
    }

    ConformalChart inverted() const;  // the inverse chart as a chain
    ConformalChart then(const ConformalChart& next) const;
};

}  // namespace loewner
