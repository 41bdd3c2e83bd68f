#include <doctest.h>

#include <random>

#include "loewner/maps.hpp"

using namespace loewner;

namespace {

std::mt19937_64& rng() {
    static std::mt19937_64 gen(91521);
    return gen;
}

double runif(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

// central finite differences for the first three derivatives
void fd_jets(const std::function<cplx(cplx)>& f, cplx z, double h, cplx out[3]) {
    cplx fp = f(z + h), fm = f(z - h);
    cplx fpp = f(z + 2 * h), fmm = f(z - 2 * h);
    cplx f0 = f(z);
    out[0] = (fp - fm) / (2 * h);
    out[1] = (fp - 2.0 * f0 + fm) / (h * h);
    out[2] = (fpp - 2.0 * fp + 2.0 * fm - fmm) / (2 * h * h * h);
}

}  // namespace

TEST_CASE("geodesic up-step is hydrodynamically normalized") {
    // g(z) = z + 2*cap/z + O(1/z^2) far away, for any slit inclination
    for (int trial = 0; trial < 60; ++trial) {
        cplx zeta(runif(-2.0, 2.0), runif(0.05, 2.0));
        ElementaryMap g = ElementaryMap::make_geodesic(0.0, zeta);
        CHECK(g.cap > 0);
        for (double R : {1e3, 1e4}) {
            cplx z = std::polar(R, runif(0.3, kPi - 0.3));
            cplx img = g.apply(SpherePoint(z)).z;
            cplx expect = z + 2.0 * g.cap / z;
            // remainder is O(1/R^2); allow for cancellation noise ~ R*eps
            CHECK(std::abs(img - expect) < 200.0 / (R * R) + 1e-11 * R);
        }
    }
}

TEST_CASE("geodesic step absorbs its target point onto the new driving value") {
    for (int trial = 0; trial < 40; ++trial) {
        double base = runif(-1, 1);
        cplx zeta(runif(-2.0, 2.0), runif(0.05, 2.0));
        ElementaryMap g = ElementaryMap::make_geodesic(base, zeta);
        SpherePoint img = g.apply(SpherePoint(base + zeta));
        CHECK(img.finite());
        CHECK(std::abs(img.z.imag()) < 1e-7);
        CHECK(img.z.real() == doctest::Approx(g.new_driving()).epsilon(1e-7));
        // scar brackets the new driving value
        CHECK(g.scar_left() < g.new_driving());
        CHECK(g.new_driving() < g.scar_right());
    }
}

TEST_CASE("geodesic step: inverse round trip and real boundary path") {
    for (int trial = 0; trial < 40; ++trial) {
        double base = runif(-1, 1);
        cplx zeta(runif(-2.0, 2.0), runif(0.1, 2.0));
        ElementaryMap g = ElementaryMap::make_geodesic(base, zeta);
        for (int k = 0; k < 10; ++k) {
            cplx z(base + runif(-3, 3), runif(0.02, 3.0));
            SpherePoint w = g.apply(SpherePoint(z));
            SpherePoint back = g.apply_inverse(w);
            CHECK(std::abs(back.z - z) < 1e-9 * (1.0 + std::abs(z)));
        }
        // the real path agrees with complex evaluation off the scar
        for (int k = 0; k < 10; ++k) {
            double x = base + runif(1.2, 4.0) * (k % 2 ? 1.0 : -1.0);
            double via_real = g.apply_real(x);
            cplx via_cplx = g.apply(SpherePoint(x, 0.0)).z;
            CHECK(std::abs(via_real - via_cplx.real()) < 1e-9 * (1.0 + std::abs(via_real)));
            CHECK(std::abs(via_cplx.imag()) < 1e-9);
        }
    }
}

TEST_CASE("vertical geodesic step reduces to sqrt(z^2 + h^2)") {
    ElementaryMap g = ElementaryMap::make_geodesic(0.0, cplx(0.0, 1.0));
    CHECK(g.vertical);
    CHECK(g.cap == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(g.drive == 0.0);
    SpherePoint img = g.apply(SpherePoint(0.0, 2.0));
    CHECK(std::abs(img.z - cplx(0.0, std::sqrt(3.0))) < 1e-12);
    CHECK(g.apply_real(2.0) == doctest::Approx(std::sqrt(5.0)));
    CHECK(g.apply_real(-2.0) == doctest::Approx(-std::sqrt(5.0)));
}

TEST_CASE("tilted slit matches the vertical slit at zero driving increment") {
    ElementaryMap t = ElementaryMap::make_tilted(0.0, 0.0, 0.25);
    // alpha = 1/2, slit [0, i]; the map is sqrt(z^2 - s^2/4) with s = 2
    CHECK(t.alpha == doctest::Approx(0.5));
    SpherePoint tip = t.apply(SpherePoint(t.drive, 0.0));
    CHECK(std::abs(tip.z - cplx(0.0, 1.0)) < 1e-12);
    // far field: down map subtracts capacity: z - 2*dt/z + O(1/z^2)
    cplx z(500.0, 300.0);
    cplx img = t.apply(SpherePoint(z)).z;
    CHECK(std::abs(img - (z - 2.0 * 0.25 / z)) < 10.0 / std::norm(z));
}

TEST_CASE("tilted slit: tip, capacity, and driving displacement") {
    for (int trial = 0; trial < 40; ++trial) {
        double dw = runif(-1.0, 1.0), dt = runif(0.01, 0.5), base = runif(-1, 1);
        ElementaryMap t = ElementaryMap::make_tilted(base, dw, dt);
        // slit grows from `base`; its tip is the image of base + dw
        SpherePoint tip = t.apply(SpherePoint(base + dw, 0.0));
        CHECK(tip.finite());
        CHECK(tip.z.imag() > 0);
        double ang = std::arg(tip.z - base);
        CHECK(ang == doctest::Approx(kPi * t.alpha).epsilon(1e-9));
        // far-field capacity
        cplx z(800.0, 500.0);
        cplx img = t.apply(SpherePoint(z + base)).z - base;
        CHECK(std::abs(img - (z - 2.0 * dt / z)) < 10.0 / std::norm(z));
    }
}

TEST_CASE("analytic jets match finite differences") {
    // geodesic step
    ElementaryMap g = ElementaryMap::make_geodesic(0.3, cplx(0.8, 1.1));
    ElementaryMap t = ElementaryMap::make_tilted(-0.2, 0.7, 0.2);
    ElementaryMap s = ElementaryMap::make_sqrt();
    ElementaryMap q = ElementaryMap::make_square();
    for (const ElementaryMap& m : {g, t, s, q}) {
        for (int k = 0; k < 12; ++k) {
            cplx z(runif(0.5, 2.0), runif(0.5, 2.0));
            Jet j = m.jet(z);
            CHECK(std::abs(j.v - m.apply(SpherePoint(z)).z) < 1e-11);
            cplx fd[3];
            fd_jets([&](cplx w) { return m.apply(SpherePoint(w)).z; }, z, 1e-5, fd);
            CHECK(std::abs(j.d1 - fd[0]) < 2e-6 * (1.0 + std::abs(j.d1)));
            CHECK(std::abs(j.d2 - fd[1]) < 2e-4 * (1.0 + std::abs(j.d2)));
            // third differences need a larger step to beat roundoff
            fd_jets([&](cplx w) { return m.apply(SpherePoint(w)).z; }, z, 2e-3, fd);
            CHECK(std::abs(j.d3 - fd[2]) < 1e-2 * (1.0 + std::abs(j.d3)));
        }
    }
}

TEST_CASE("chart: forward/inverse identity and jet composition") {
    ConformalChart chart;
    chart.push(ElementaryMap::make_geodesic(0.0, cplx(0.5, 1.0)));
    chart.push(ElementaryMap::make_geodesic(0.6, cplx(-0.3, 0.8)));
    chart.push_mobius(MobiusComplex(1.0, cplx(0.2, 0.1), 0.0, 1.0));
    chart.push(ElementaryMap::make_geodesic(-0.1, cplx(0.2, 1.3)));

    for (int k = 0; k < 100; ++k) {
        cplx z(runif(-2, 2), runif(0.2, 3.0));
        SpherePoint w = chart.map(SpherePoint(z));
        SpherePoint back = chart.inverse(w);
        CHECK(std::abs(back.z - z) < 1e-9 * (1.0 + std::abs(z)));
    }

    // jet of the chain vs finite differences, both directions
    ConformalChart inv = chart.inverted();
    for (int k = 0; k < 10; ++k) {
        cplx z(runif(-1, 1), runif(0.5, 2.0));
        Jet j = chart.jet(z);
        cplx fd[3];
        fd_jets([&](cplx w) { return chart.map(SpherePoint(w)).z; }, z, 1e-5, fd);
        CHECK(std::abs(j.d1 - fd[0]) < 1e-5 * (1.0 + std::abs(j.d1)));
        CHECK(std::abs(j.d2 - fd[1]) < 1e-3 * (1.0 + std::abs(j.d2)));

        cplx w = chart.map(SpherePoint(z)).z;
        Jet ji = inv.jet(w);
        CHECK(std::abs(ji.v - z) < 1e-9);
        CHECK(std::abs(ji.d1 * j.d1 - 1.0) < 1e-8);
    }
}

TEST_CASE("schwarzian helper") {
    // S[z^2](z) = -3/(2 z^2)
    ElementaryMap q = ElementaryMap::make_square();
    cplx z(1.0, 1.0);
    Jet j = q.jet(z);
    cplx s = schwarzian_of(j);
    CHECK(std::abs(s - (-1.5 / (z * z))) < 1e-12);
}
