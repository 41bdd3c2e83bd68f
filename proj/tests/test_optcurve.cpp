#include <doctest.h>

#include "loewner/optcurve.hpp"
#include "loewner/energy.hpp"

using namespace loewner;

TEST_CASE("circle with marks is a fixed point of arc replacement") {
    CurvePolyline c = make_circle(320);
    c.marks = {0, 80, 160, 240};
    auto res = geodesic_residual(c);
    for (double d : res) CHECK(d < 1e-3);

    // repeating the same step reproduces the same arc (deterministic)
    CurvePolyline c1 = geodesic_replacement_step(c, 0, 80);
    CurvePolyline c2 = geodesic_replacement_step(c1, 0, 80);
    CHECK(hausdorff_dist(c1.points, c2.points, true, true) < 1e-9);

    // and the replaced curve stays near the circle
    CHECK(hausdorff_dist(c.points, c1.points, true, true) < 1e-3);
}

TEST_CASE("one replacement step does not increase the loop energy") {
    std::vector<SpherePoint> pts = {SpherePoint(1, 0), SpherePoint(0, 1),
                                    SpherePoint(-1, 0), SpherePoint(0, -1)};
    CurvePolyline init = initial_through_points(pts, 50, {0.25, -0.2, 0.15, -0.1});
    double before = loop_energy_liouville(init, 9, 160, 260).value;
    CurvePolyline stepped = geodesic_replacement_step(init, 0, 60);
    double after = loop_energy_liouville(stepped, 9, 160, 260).value;
    CHECK(after < before + 1e-3);
    CHECK(after < before);  // the first arc is visibly non-geodesic here
}

TEST_CASE("three points are joined by their circumcircle") {
    std::vector<SpherePoint> pts = {SpherePoint(0, 0), SpherePoint(2, 0),
                                    SpherePoint(1, 1.5)};
    CurveProblem prob;
    prob.points = pts;
    prob.initial = initial_through_points(pts, 50, {0.3, 0.2, 0.25});
    prob.tol = 1e-3;
    prob.max_sweeps = 20;
    prob.arc_budget = 120;
    prob.track_energy = false;
    CurveMinimizeResult r = minimize_curve(prob);
    CHECK(r.converged);
    for (double d : r.residuals) CHECK(d < 1e-3);

    Circline circ = circline_through(pts[0], pts[1], pts[2]);
    double worst = 0;
    for (const auto& p : r.curve.points) worst = std::max(worst, circ.dist(p));
    CHECK(worst < 5e-3);
    EnergyReport e = loop_energy_liouville(r.curve, 10, 256, 0);
    CHECK(e.value < 1e-3);
}

TEST_CASE("marks stay pinned on the prescribed points") {
    std::vector<SpherePoint> pts = {SpherePoint(0, 0), SpherePoint(2, 0),
                                    SpherePoint(1, 2), SpherePoint(-1, 1)};
    CurvePolyline cur = initial_through_points(pts, 40);
    for (int k = 0; k < 4; ++k) cur = geodesic_replacement_step(cur, k, 50);
    REQUIRE(cur.marks.size() == 4);
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(chordal_dist(cur.points[cur.marks[k]], pts[k]) < 1e-12);
    // the cyclic order of arcs is untouched (homotopy data preserved)
    CHECK(is_simple(cur));
}

TEST_CASE("problem validation") {
    CurveProblem bad;
    bad.points = {SpherePoint(0, 0), SpherePoint(1, 0), SpherePoint(0, 1)};
    bad.initial = make_circle(60);  // no marks
    CHECK_THROWS_AS(minimize_curve(bad), validation_error);
}
