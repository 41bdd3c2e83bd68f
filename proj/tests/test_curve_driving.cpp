#include <doctest.h>

#include "loewner/curve.hpp"
#include "loewner/driving.hpp"

using namespace loewner;

TEST_CASE("dirichlet energy: exact values") {
    DrivingFunction zero;
    zero.times = {0.0, 0.5, 1.0};
    zero.values = {0.0, 0.0, 0.0};
    CHECK(dirichlet_energy(zero) == 0.0);

    // W(t) = 2t on [0,1]: (1/2) * 4 * 1 = 2 exactly
    DrivingFunction lin;
    for (int i = 0; i <= 10; ++i) {
        lin.times.push_back(i / 10.0);
        lin.values.push_back(2.0 * i / 10.0);
    }
    CHECK(dirichlet_energy(lin) == doctest::Approx(2.0).epsilon(1e-14));

    DrivingFunction pl;
    pl.times = {0.0, 1.0, 2.0};
    pl.values = {0.0, 1.0, 1.0};
    CHECK(dirichlet_energy(pl) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("dirichlet energy: additivity and scaling are exact") {
    DrivingFunction w;
    w.times = {0.0, 0.25, 0.7, 1.3, 2.0};
    w.values = {0.0, 0.3, -0.1, 0.4, 0.2};

    double total = dirichlet_energy(w);
    for (std::size_t split = 1; split + 1 < w.times.size(); ++split) {
        double head = dirichlet_energy(w.restricted(split));
        double tail = dirichlet_energy(w.tail_from(split));
        CHECK(head + tail == doctest::Approx(total).epsilon(1e-14));
    }
    for (double lambda : {0.3, 1.7, 4.0})
        CHECK(dirichlet_energy(w.scaled(lambda)) == doctest::Approx(total).epsilon(1e-13));
}

TEST_CASE("driving validation") {
    DrivingFunction bad;
    bad.times = {0.0, 1.0, 1.0};
    bad.values = {0.0, 0.1, 0.2};
    CHECK_THROWS_AS(bad.validate("test"), validation_error);

    DrivingFunction shifted;
    shifted.times = {0.0, 1.0};
    shifted.values = {0.5, 0.6};
    CHECK_THROWS_AS(shifted.validate("test"), validation_error);
}

TEST_CASE("curve simplicity at sampling resolution") {
    CurvePolyline fig8;
    fig8.closed = true;
    fig8.points = {SpherePoint(0, 0), SpherePoint(2, 2), SpherePoint(2, 0),
                   SpherePoint(0, 2)};
    std::size_t a = 0, b = 0;
    CHECK(!is_simple(fig8, &a, &b));

    CurvePolyline circle = make_circle(64);
    CHECK(is_simple(circle));
}

TEST_CASE("orientation and reversal") {
    CurvePolyline c = make_circle(32);
    CHECK(is_counterclockwise(c));
    reverse_orientation(c);
    CHECK(!is_counterclockwise(c));
}

TEST_CASE("resampling keeps marks and endpoint clustering") {
    CurvePolyline square;
    square.closed = true;
    square.points = {SpherePoint(1, -1), SpherePoint(1, 1), SpherePoint(-1, 1),
                     SpherePoint(-1, -1)};
    square.marks = {0, 1, 2, 3};
    CurvePolyline r = resample_closed_marked(square, 80, 1.5);
    CHECK(r.marks.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(chordal_dist(r.points[r.marks[k]], square.points[k]) < 1e-12);
    }
    CHECK(is_simple(r));
}

TEST_CASE("hausdorff distance sanity") {
    CurvePolyline a = make_circle(128);
    CurvePolyline b = make_circle(200, {0, 0}, 1.0, 0.37);
    CHECK(hausdorff_dist(a.points, b.points, true, true) < 2e-3);
    CurvePolyline big = make_circle(128, {0, 0}, 1.1);
    double d = hausdorff_dist(a.points, big.points, true, true);
    CHECK(d > 0.05);
    CHECK(d < 0.12);
}
