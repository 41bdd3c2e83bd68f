#include <doctest.h>

#include <random>

#include "loewner/weld.hpp"

using namespace loewner;

namespace {

WeldingSamples sampled_mobius_welding(const MobiusReal& rho, int n, double phase) {
    WeldingSamples w;
    for (int i = 0; i < n; ++i) {
        double th = kTwoPi * i / n + phase;
        if (th >= kTwoPi) th -= kTwoPi;
        w.theta.push_back(th);
        w.image.push_back(rho.apply_angle(th));
    }
    std::sort(w.theta.begin(), w.theta.end());
    w.image.clear();
    for (double th : w.theta) w.image.push_back(rho.apply_angle(th));
    for (std::size_t i = 1; i < w.image.size(); ++i)
        while (w.image[i] < w.image[i - 1]) w.image[i] += kTwoPi;
    return w;
}

}  // namespace

TEST_CASE("welding of the unit circle is the identity after pinning") {
    CurvePolyline c = make_circle(400);
    c.marks = {0, 100, 200, 300};
    WeldingSamples w = welding_from_curve(c, 400);
    double worst = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
        worst = std::max(worst, angle_dist(wrap_angle(w.image[i]), w.theta[i]));
    CHECK(worst < 1e-3);
    CHECK(w.break_x.size() == 4);
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(angle_dist(w.break_y[k], w.break_x[k]) < 1e-3);
}

TEST_CASE("welding is monotone for simple curves") {
    CurvePolyline p = make_perturbed_circle(500, 0.2);
    WeldingSamples w = welding_from_curve(p, 500);
    for (std::size_t i = 1; i < w.size(); ++i) {
        CHECK(w.theta[i] > w.theta[i - 1]);
        CHECK(w.image[i] > w.image[i - 1]);
    }
    CHECK(w.image.back() - w.image.front() < kTwoPi);
}

TEST_CASE("welding class is Moebius invariant (equivariance)") {
    CurvePolyline p = make_perturbed_circle(500, 0.15);
    p.marks = {0, 125, 250, 375};
    WeldingSamples wp = welding_from_curve(p, 500);
    MobiusComplex m(cplx(1.05, 0.1), cplx(0.2, -0.05), cplx(0.08, 0.03), 1.0);
    CurvePolyline mp = apply_mobius(m, p);
    WeldingSamples wm = welding_from_curve(mp, 500);
    WeldingAlignment al = align_weldings(wp, wm, 2);
    CHECK(al.sup_error < 1e-2);
}

TEST_CASE("fit recovers an exact Moebius welding") {
    MobiusReal rho(1.2, 0.3, 0.1, 1.0);
    WeldingSamples w = sampled_mobius_welding(rho, 64, 0.01);
    w.break_x = {w.theta[0]};
    w.break_y = {wrap_angle(w.image[0])};
    w.break_index = {0};
    auto fits = fit_mobius_pieces(w);
    REQUIRE(fits.size() == 1);
    CHECK(fits[0].residual < 1e-10);

    // identity samples fit the identity on each of two pieces
    WeldingSamples ident = sampled_mobius_welding(MobiusReal(), 64, 0.02);
    ident.break_x = {ident.theta[0], ident.theta[32]};
    ident.break_y = {wrap_angle(ident.image[0]), wrap_angle(ident.image[32])};
    ident.break_index = {0, 32};
    auto fid = fit_mobius_pieces(ident);
    REQUIRE(fid.size() == 2);
    for (const auto& f : fid) {
        CHECK(f.residual < 1e-10);
        CHECK(angle_dist(f.map.apply_angle(1.234), 1.234) < 1e-10);
    }
}

TEST_CASE("fit residual shrinks under refinement for Moebius pieces") {
    MobiusReal rho(1.1, -0.2, 0.05, 1.0);
    for (int n : {32, 128}) {
        WeldingSamples w = sampled_mobius_welding(rho, n, 0.005);
        w.break_x = {w.theta[0]};
        w.break_y = {wrap_angle(w.image[0])};
        w.break_index = {0};
        auto fits = fit_mobius_pieces(w);
        CHECK(fits[0].residual < 1e-9);  // exact data: resolution-independent
    }
}

TEST_CASE("c1 break report: identity pieces and a constructed derivative jump") {
    WeldingSamples ident = sampled_mobius_welding(MobiusReal(), 64, 0.02);
    ident.break_x = {ident.theta[0], ident.theta[32]};
    ident.break_y = {wrap_angle(ident.image[0]), wrap_angle(ident.image[32])};
    ident.break_index = {0, 32};
    auto jumps = c1_break_report(ident, {MobiusReal(), MobiusReal()});
    CHECK(jumps[0] == 0.0);
    CHECK(jumps[1] == 0.0);

    // piece 0 = identity, piece 1 = map fixing the breakpoint angle pi with
    // derivative 2 there: jump log 2 on both sides
    WeldingSamples w = ident;
    w.break_x = {kPi, 0.02};  // breakpoints at pi and at the first sample
    w.break_y = w.break_x;
    MobiusReal doubling(std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0));  // t -> 2t
    auto jumps2 = c1_break_report(w, {MobiusReal(), doubling});
    // at break 0 (angle pi): left = doubling (deriv 2), right = identity
    CHECK(jumps2[0] == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("transform and blind alignment agree") {
    CurvePolyline p = make_perturbed_circle(500, 0.15);
    WeldingSamples wp = welding_from_curve(p, 500);
    MobiusReal a(0.9, 0.2, 0.1, 1.2), b(1.1, -0.3, 0.05, 0.95);
    WeldingSamples wt = transform_welding(wp, a, b);
    WeldingAlignment al = align_weldings(wp, wt, 2);
    CHECK(al.sup_error < 1e-3);
}

TEST_CASE("welding validation rejects non-monotone data") {
    WeldingSamples w = sampled_mobius_welding(MobiusReal(), 16, 0.1);
    std::swap(w.image[3], w.image[4]);
    CHECK_THROWS_AS(w.validate("test"), validation_error);
}
