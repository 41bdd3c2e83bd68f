#include <doctest.h>

#include "loewner/energy.hpp"
#include "loewner/optweld.hpp"

using namespace loewner;

namespace {
const std::vector<double> kQuarters = {0.0, kPi / 2, kPi, 3 * kPi / 2};
}

TEST_CASE("circular fit report: circles and squares") {
    CurvePolyline circle = make_circle(240);
    circle.marks = {0, 60, 120, 180};
    auto fits = circular_fit_report(circle);
    for (const auto& f : fits) {
        CHECK(f.residual < 1e-10);
        CHECK(std::abs(f.joint_angle - kPi) < 1e-6);
    }

    CurvePolyline square;
    square.closed = true;
    for (int k = 0; k < 4; ++k) {
        cplx a = std::polar(1.0, kPi / 4 + kPi / 2 * k);
        cplx b = std::polar(1.0, kPi / 4 + kPi / 2 * (k + 1));
        square.marks.push_back(square.points.size());
        for (int i = 0; i < 40; ++i)
            square.points.emplace_back(a + (b - a) * (i / 40.0));
    }
    auto sq = circular_fit_report(square);
    for (const auto& f : sq) {
        CHECK(f.residual < 1e-10);  // segments are circlines
        CHECK(std::abs(f.joint_angle - kPi / 2) < 1e-6);  // corners detected
    }
}

TEST_CASE("initial constrained curve: identity and Moebius shortcuts") {
    CurvePolyline c0 = initial_constrained_curve(kQuarters, kQuarters);
    WeldingSamples w0 = welding_from_curve(c0, 400);
    double r0 = 0;
    align_to_constraints(w0, kQuarters, kQuarters, &r0);
    CHECK(r0 < 1e-3);

    MobiusReal rho(1.2, 0.3, 0.1, 1.0);
    std::vector<double> y;
    for (double xx : kQuarters) y.push_back(rho.apply_angle(xx));
    CurvePolyline c1 = initial_constrained_curve(kQuarters, y);
    WeldingSamples w1 = welding_from_curve(c1, 400);
    double r1 = 0;
    align_to_constraints(w1, kQuarters, y, &r1);
    CHECK(r1 < 1e-3);
}

TEST_CASE("initial constrained curve reaches generic constraints") {
    std::vector<double> y = {0.1, 1.9, 3.3, 4.9};
    CurvePolyline c = initial_constrained_curve(kQuarters, y);
    CHECK(is_simple(c));
    WeldingSamples w = welding_from_curve(c, 420);
    double res = 0;
    align_to_constraints(w, kQuarters, y, &res);
    CHECK(res < 1e-2);
}

TEST_CASE("one straightening step: circular arcs are fixed points") {
    CurvePolyline c;
    c.closed = true;
    for (std::size_t k = 0; k < 4; ++k) {
        c.marks.push_back(c.points.size());
        for (std::size_t i = 0; i < 90; ++i)
            c.points.emplace_back(std::polar(1.0, kQuarters[k] + (kPi / 2) * i / 90));
    }
    double before = loop_energy_liouville(c, 9, 160, 0).value;
    StraightenResult st = arc_straighten_step(c, 0, 90, 420);
    double after = loop_energy_liouville(st.curve, 9, 160, 0).value;
    CHECK(std::abs(after - before) < 1e-3);
    auto fits = circular_fit_report(st.curve);
    for (const auto& f : fits) CHECK(f.residual < 5e-4);
}

TEST_CASE("straightening step preserves the constraint pairs") {
    std::vector<double> y = {0.1, 1.9, 3.3, 4.9};
    CurvePolyline c = initial_constrained_curve(kQuarters, y);
    double energy_before = loop_energy_liouville(c, 9, 160, 300).value;
    for (std::size_t k = 0; k < 4; ++k) {
        StraightenResult st = arc_straighten_step(c, k, 120, 420);
        c = st.curve;
        double cres = 0;
        align_to_constraints(st.welding, kQuarters, y, &cres);
        CHECK(cres < 1e-2);
    }
    double energy_after = loop_energy_liouville(c, 9, 160, 300).value;
    CHECK(energy_after < energy_before + 1e-3);
}

TEST_CASE("minimize_welding: identity constraints give the identity welding") {
    WeldProblem p;
    p.x = kQuarters;
    p.y = kQuarters;
    p.initial = initial_constrained_curve(kQuarters, kQuarters);
    p.max_sweeps = 10;
    WeldMinimizeResult r = minimize_welding(p);
    CHECK(r.converged);
    CHECK(r.energy_trace.back() < 1e-3);
    double sup = 0;
    for (std::size_t i = 0; i < r.welding.size(); ++i)
        sup = std::max(sup,
                       angle_dist(wrap_angle(r.welding.image[i]), r.welding.theta[i]));
    CHECK(sup < 1e-2);
}

TEST_CASE("weld problem validation") {
    WeldProblem bad;
    bad.x = {0.0, 1.0, 2.0, 1.5};  // not cyclically increasing
    bad.y = kQuarters;
    bad.initial = make_circle(100);
    CHECK_THROWS_AS(minimize_welding(bad), validation_error);
}
