#include "loewner/loewner.hpp"

#include <algorithm>
#include <cmath>

#include "loewner/confmap.hpp"
#include "loewner/zipper.hpp"

namespace loewner {

CurvePolyline trace(const DrivingFunction& w, int steps_per_unit,
                    std::vector<double>* capacity_times) {
    w.validate("trace");
    if (steps_per_unit < 100)
        throw validation_error("trace: steps_per_unit must be >= 100");

    // sub-step grid refining the input grid
    std::vector<double> t{0.0}, val{0.0};
    for (std::size_t i = 1; i < w.times.size(); ++i) {
        double dt = w.times[i] - w.times[i - 1];
        int m = std::max(1, static_cast<int>(std::ceil(dt * steps_per_unit)));
        for (int j = 1; j <= m; ++j) {
            double tt = w.times[i - 1] + dt * j / m;
            t.push_back(tt);
            val.push_back(w.value_at(tt));
        }
    }

    std::vector<ElementaryMap> maps;
    maps.reserve(t.size() - 1);
    for (std::size_t k = 1; k < t.size(); ++k)
        maps.push_back(ElementaryMap::make_tilted(val[k - 1], val[k] - val[k - 1],
                                                  t[k] - t[k - 1]));

    CurvePolyline out;
    out.points.emplace_back(0.0, 0.0);
    for (std::size_t k = 0; k < maps.size(); ++k) {
        SpherePoint p(val[k + 1], 0.0);  // tip preimage of step k
        for (std::size_t j = k + 1; j-- > 0;) p = maps[j].apply(p);
        if (!p.finite() || p.z.imag() < -1e-12)
            throw numeric_error("trace: discrete trace exited the upper half-plane at step " +
                                std::to_string(k + 1) +
                                " (driving too rough for this step size)");
        out.points.push_back(p);
    }
    std::size_t sa, sb;
    if (!is_simple(out, &sa, &sb))
        throw numeric_error("trace: discrete trace self-intersects at segments " +
                            std::to_string(sa) + "," + std::to_string(sb));
    if (capacity_times) *capacity_times = t;
    return out;
}

DrivingFunction extract_driving(const CurvePolyline& chord) {
    chord.validate("extract_driving");
    if (chord.closed) throw validation_error("extract_driving: input must be an open curve");
    for (const auto& p : chord.points)
        if (!p.finite()) throw validation_error("extract_driving: point at infinity");
    double scale = 0;
    for (const auto& p : chord.points) scale = std::max(scale, std::abs(p.z));
    if (std::abs(chord.points[0].z.imag()) > 1e-7 * (scale + 1.0))
        throw validation_error("extract_driving: curve must start on R "
                               "(normalize the domain to (H;0,inf) first)");
    double x0 = chord.points[0].z.real();
    std::vector<cplx> pts;
    pts.reserve(chord.points.size());
    pts.push_back(cplx(0.0, 0.0));
    for (std::size_t i = 1; i < chord.points.size(); ++i)
        pts.push_back(chord.points[i].z - x0);
    auto run = detail::unzip(pts);
    return run.driving;
}

double chord_energy_halfplane(const CurvePolyline& chord) {
    return dirichlet_energy(extract_driving(chord));
}

namespace {

double energy_through_chart(const ConformalChart& chart, const CurvePolyline& chord) {
    std::vector<cplx> img;
    img.reserve(chord.points.size());
    // the chart pins the near prime end to 0; evaluating the chain exactly at
    // a boundary sample is two-sided and unreliable, so place it directly
    img.push_back(cplx(0.0, 0.0));
    for (std::size_t i = 1; i < chord.points.size(); ++i) {
        SpherePoint q = chart.map(chord.points[i]);
        if (q.at_inf || std::abs(q.z) > 1e9) {
            if (i + 1 == chord.points.size()) break;  // far prime end reached
            throw numeric_error("chord_energy: chord image left the half-plane chart");
        }
        img.push_back(q.z);
    }
    if (img.size() < 3) throw validation_error("chord_energy: chord too short");
    auto run = detail::unzip(img);
    return dirichlet_energy(run.driving);
}

}  // namespace

double chord_energy_in_domain(const CurvePolyline& chord,
                              const CurvePolyline& domain_boundary,
                              const SpherePoint& a, const SpherePoint& b) {
    chord.validate("chord_energy_in_domain");
    if (chordal_dist(chord.points.front(), a) > 1e-6 ||
        chordal_dist(chord.points.back(), b) > 1e-6) {
        if (chordal_dist(chord.points.front(), b) < 1e-6 &&
            chordal_dist(chord.points.back(), a) < 1e-6)
            throw validation_error("chord_energy_in_domain: chord is reversed "
                                   "relative to (a, b)");
        throw validation_error(
            "chord_energy_in_domain: chord endpoints do not match the prescribed prime ends");
    }

    if (!domain_boundary.closed) {
        // domain = complement of the open arc; a, b must be the arc endpoints
        const auto& arc = domain_boundary.points;
        std::vector<SpherePoint> oriented = arc;
        if (chordal_dist(arc.front(), a) < 1e-6 && chordal_dist(arc.back(), b) < 1e-6) {
            // tail -> 0 must be a
        } else if (chordal_dist(arc.front(), b) < 1e-6 && chordal_dist(arc.back(), a) < 1e-6) {
            std::reverse(oriented.begin(), oriented.end());
        } else {
            throw validation_error(
                "chord_energy_in_domain: prime ends must be the arc endpoints");
        }
        // map_arc_complement sends oriented.front() (= a) -> 0 and
        // oriented.back() (= b) -> infinity, exactly the chart we need.
        ConformalChart chart = map_arc_complement(oriented);
        return energy_through_chart(chart, chord);
    }

    // closed boundary: pick the component containing the chord's midpoint
    std::size_t n = domain_boundary.points.size();
    auto nearest = [&](const SpherePoint& p) {
        std::size_t best = 0;
        double bd = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            double d = chordal_dist(domain_boundary.points[i], p);
            if (d < bd) {
                bd = d;
                best = i;
            }
        }
        if (bd > 1e-6)
            throw validation_error(
                "chord_energy_in_domain: prime end is not a boundary sample");
        return best;
    };
    std::size_t ia = nearest(a), ib = nearest(b);
    SpherePoint hint = chord.points[chord.points.size() / 2];
    ConformalChart chart = jordan_domain_chart(domain_boundary, ia, ib, hint);
    return energy_through_chart(chart, chord);
}

}  // namespace loewner
