#include "loewner/optcurve.hpp"

#include <algorithm>
#include <cmath>

#include "loewner/confmap.hpp"

namespace loewner {

void CurveProblem::validate() const {
    if (points.size() < 3)
        throw validation_error("curve problem: need at least 3 marked points");
    if (initial.marks.size() != points.size())
        throw validation_error("curve problem: initial curve must mark every point");
    if (!initial.closed) throw validation_error("curve problem: initial curve must be closed");
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (chordal_dist(initial.points[initial.marks[k]], points[k]) > 1e-9)
            throw validation_error("curve problem: mark " + std::to_string(k) +
                                   " does not sit on its point");
    }
    CurvePolyline probe = initial;
    std::size_t sa, sb;
    if (!is_simple(probe, &sa, &sb))
        throw validation_error("curve problem: initial curve self-intersects");
    if (!(tol > 0)) throw validation_error("curve problem: tolerance must be positive");
}

CurvePolyline geodesic_replacement_step(const CurvePolyline& curve, std::size_t k,
                                        std::size_t arc_budget) {
    if (curve.marks.size() < 3)
        throw validation_error("geodesic_replacement_step: need >= 3 marks");
    std::size_t n = curve.marks.size();
    k %= n;

    std::vector<SpherePoint> rest = curve.complement_of_arc(k);  // z_{k+1} .. z_k
    ConformalChart chart = map_arc_complement(rest);
    // tail z_{k+1} -> 0, head z_k -> infinity; the replacement arc runs
    // z_k -> z_{k+1}, i.e. from the infinity end down. The welding derivative
    // at the marks is the most delicate downstream quantity, so the samples
    // cluster hard toward the prime ends.
    CurvePolyline geo = hyperbolic_geodesic(chart, rest.front(), rest.back(),
                                            std::max<std::size_t>(arc_budget, 16),
                                            1e-10, 1e10, 1.2);
    std::reverse(geo.points.begin(), geo.points.end());

    CurvePolyline out;
    out.closed = true;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<SpherePoint> arc =
            (j == k) ? geo.points : curve.arc_between_marks(j);
        out.marks.push_back(out.points.size());
        for (std::size_t i = 0; i + 1 < arc.size(); ++i) {
            if (!out.points.empty() &&
                chordal_dist(out.points.back(), arc[i]) < 1e-13)
                continue;
            out.points.push_back(arc[i]);
        }
    }
    // marks must point at the replacement endpoints exactly
    std::size_t sa, sb;
    if (!is_simple(out, &sa, &sb))
        throw numeric_error("geodesic_replacement_step: replacement self-intersects at segments " +
                            std::to_string(sa) + "," + std::to_string(sb));
    return out;
}

std::vector<double> geodesic_residual(const CurvePolyline& curve) {
    if (curve.marks.size() < 3)
        throw validation_error("geodesic_residual: need >= 3 marks");
    std::size_t n = curve.marks.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<SpherePoint> rest = curve.complement_of_arc(k);
        std::vector<SpherePoint> arc = curve.arc_between_marks(k);
        ConformalChart chart = map_arc_complement(rest);
        CurvePolyline geo = hyperbolic_geodesic(chart, rest.front(), rest.back(),
                                                std::max<std::size_t>(arc.size(), 32));
        out[k] = hausdorff_dist(arc, geo.points);
    }
    return out;
}

CurveMinimizeResult minimize_curve(const CurveProblem& problem) {
    problem.validate();
    CurveMinimizeResult res;
    res.curve = problem.initial;

    auto energy_of = [&](const CurvePolyline& c) {
        EnergyReport rep = loop_energy_liouville(c, problem.energy_levels,
                                                 problem.energy_angular,
                                                 problem.energy_budget);
        return rep.value;
    };

    std::size_t n = problem.points.size();
    for (std::size_t sweep = 0; sweep < problem.max_sweeps; ++sweep) {
        for (std::size_t k = 0; k < n; ++k) {
            res.curve = geodesic_replacement_step(res.curve, k, problem.arc_budget);
            if (problem.track_energy) res.energy_trace.push_back(energy_of(res.curve));
        }
        res.sweeps = sweep + 1;
        res.residuals = geodesic_residual(res.curve);
        double worst = *std::max_element(res.residuals.begin(), res.residuals.end());
        if (worst < problem.tol) {
            res.converged = true;
            break;
        }
    }
    if (problem.polish_budget > problem.arc_budget) {
        for (std::size_t k = 0; k < n; ++k)
            res.curve = geodesic_replacement_step(res.curve, k, problem.polish_budget);
        res.residuals = geodesic_residual(res.curve);
    }
    return res;
}

std::vector<double> schwarzian_certificate(const CurvePolyline& curve,
                                           std::size_t per_arc, double offset_frac,
                                           std::size_t chart_budget) {
    if (curve.marks.size() < 2)
        throw validation_error("schwarzian_certificate: marks required");
    CurvePolyline work = resample_closed_marked(curve, chart_budget, 0.0);
    std::size_t n = work.points.size();
    std::size_t narcs = work.marks.size();
    bool ccw = is_counterclockwise(work);

    std::vector<double> gaps;
    for (std::size_t a = 0; a < narcs; ++a) {
        std::size_t from = work.marks[a];
        std::size_t to = work.marks[(a + 1) % narcs];
        std::size_t len = (to + n - from) % n;
        if (len < 8) continue;
        // The zipper seam avoids marks, so shield the arc under test with
        // virtual marks: its third derivatives are then evaluated away from
        // the chart's base cut and terminal ray.
        CurvePolyline shielded = work;
        for (double f : {0.25, 0.5, 0.75})
            shielded.marks.push_back((from + static_cast<std::size_t>(f * len)) % n);
        std::sort(shielded.marks.begin(), shielded.marks.end());
        shielded.marks.erase(std::unique(shielded.marks.begin(), shielded.marks.end()),
                             shielded.marks.end());
        DiskCharts dc = disk_charts_from_curve(shielded);
        CurvePolyline arcpoly;
        arcpoly.points = work.arc_between_marks(a);
        double arc_len = chordal_length(arcpoly);
        for (std::size_t s = 0; s < per_arc; ++s) {
            // stay in the middle 60% of the arc, away from the marks
            double frac = 0.2 + 0.6 * (per_arc == 1 ? 0.5 : double(s) / (per_arc - 1));
            std::size_t i = (from + static_cast<std::size_t>(frac * len)) % n;
            const cplx p = work.points[i].z;
            cplx tan = work.points[(i + 1) % n].z - work.points[(i + n - 1) % n].z;
            if (!(std::abs(tan) > 0)) continue;
            cplx nu = cplx(0, 1) * tan / std::abs(tan);  // left normal
            if (!ccw) nu = -nu;                          // keep nu pointing into Omega
            // The offset must clear the discretization noise near the discrete
            // boundary, yet stay well inside the pole scale: S has simple
            // poles at the marks and the two-point boundary extrapolation
            // below leaves an O((delta/d)^2) remainder.
            double d_mark = std::min(std::abs(p - work.points[from].z),
                                     std::abs(p - work.points[to].z));
            double delta = std::min(offset_frac * arc_len, 0.12 * d_mark);
            try {
                cplx s_in = 2.0 * schwarzian_of(dc.to_h_in.jet(p + delta * nu)) -
                            schwarzian_of(dc.to_h_in.jet(p + 2.0 * delta * nu));
                cplx s_out = 2.0 * schwarzian_of(dc.to_h_out.jet(p - delta * nu)) -
                             schwarzian_of(dc.to_h_out.jet(p - 2.0 * delta * nu));
                double denom = std::max(std::abs(s_in), std::abs(s_out));
                if (!(denom > 1e-12)) continue;
                gaps.push_back(std::abs(s_in - s_out) / denom);
            } catch (const numeric_error&) {
                // offset landed on a seam; skip this sample
            }
        }
    }
    if (gaps.empty())
        throw numeric_error("schwarzian_certificate: no evaluable samples");
    return gaps;
}

CurvePolyline initial_through_points(const std::vector<SpherePoint>& points,
                                     std::size_t per_arc,
                                     const std::vector<double>& bumps) {
    if (points.size() < 3) throw validation_error("initial_through_points: need >= 3 points");
    if (per_arc < 4) throw validation_error("initial_through_points: per_arc too small");
    CurvePolyline out;
    out.closed = true;
    std::size_t n = points.size();
    for (std::size_t k = 0; k < n; ++k) {
        if (!points[k].finite())
            throw validation_error("initial_through_points: points must be finite");
        cplx a = points[k].z, b = points[(k + 1) % n].z;
        cplx dir = b - a;
        cplx normal = cplx(0, 1) * dir / std::abs(dir);
        double amp = k < bumps.size() ? bumps[k] : 0.0;
        out.marks.push_back(out.points.size());
        for (std::size_t i = 0; i < per_arc; ++i) {
            double t = static_cast<double>(i) / per_arc;
            double prof = std::sin(kPi * t);
            cplx p = a + t * dir + amp * prof * prof * normal;
            out.points.emplace_back(p);
        }
    }
    return out;
}

}  // namespace loewner
