#include "loewner/energy.hpp"

#include <algorithm>
#include <cmath>

#include "loewner/loewner.hpp"
#include "loewner/zipper.hpp"

namespace loewner {

namespace {

// |f''/f'|^2 integrated over the unit disk against area/pi, on a polar grid:
// uniform rings up to 1/2, then annuli [1-2^-j, 1-2^-(j-1)] refining toward
// the boundary. Returns per-level sums so the caller can assess convergence.
std::vector<double> disk_integral_levels(const ConformalChart& chart, bool exterior,
                                         int radial_levels, int angular_samples) {
    auto integrand = [&](cplx w) -> double {
        Jet j = chart.jet(w);
        cplx q = j.d2 / j.d1;
        if (exterior) q += 2.0 / w;
        return std::norm(q);
    };

    std::vector<double> levels;
    const int inner_rings = 8;
    std::vector<double> cells;
    // center block r in [0, 1/2]
    cells.assign(static_cast<std::size_t>(inner_rings) * angular_samples, 0.0);
    parallel_for(cells.size(), [&](std::size_t idx) {
        int ri = static_cast<int>(idx) / angular_samples;
        int ai = static_cast<int>(idx) % angular_samples;
        double dr = 0.5 / inner_rings;
        double r = (ri + 0.5) * dr;
        double th = (ai + 0.5) * kTwoPi / angular_samples;
        double area = r * dr * (kTwoPi / angular_samples);
        cells[idx] = integrand(std::polar(r, th)) * area;
    });
    levels.push_back(tree_sum(cells) / kPi);

    for (int lvl = 1; lvl <= radial_levels; ++lvl) {
        double r0 = 1.0 - std::pow(2.0, -lvl);
        double r1 = 1.0 - std::pow(2.0, -(lvl + 1));
        // subdivide each annulus once radially for a fairer midpoint rule
        const int sub = 2;
        cells.assign(static_cast<std::size_t>(sub) * angular_samples, 0.0);
        parallel_for(cells.size(), [&](std::size_t idx) {
            int ri = static_cast<int>(idx) / angular_samples;
            int ai = static_cast<int>(idx) % angular_samples;
            double dr = (r1 - r0) / sub;
            double r = r0 + (ri + 0.5) * dr;
            double th = (ai + 0.5) * kTwoPi / angular_samples;
            double area = r * dr * (kTwoPi / angular_samples);
            cells[idx] = integrand(std::polar(r, th)) * area;
        });
        levels.push_back(tree_sum(cells) / kPi);
    }
    return levels;
}

}  // namespace

EnergyReport liouville_action(const ConformalChart& f, const ConformalChart& g,
                              int radial_levels, int angular_samples) {
    if (radial_levels < 3 || angular_samples < 16)
        throw validation_error("liouville_action: resolution below documented minima");

    // exterior chart pulled back to the disk by w -> 1/w
    ConformalChart g_pulled;
    g_pulled.push_mobius(MobiusComplex(0.0, 1.0, 1.0, 0.0));
    g_pulled = g_pulled.then(g);

    std::vector<double> lf = disk_integral_levels(f, false, radial_levels, angular_samples);
    std::vector<double> lg = disk_integral_levels(g_pulled, true, radial_levels, angular_samples);

    double term_f = 0.0, term_g = 0.0;
    for (double v : lf) term_f += v;
    for (double v : lg) term_g += v;

    double fp0 = std::abs(f.jet(cplx(0.0, 0.0)).d1);
    // |g'(inf)| = 1 / |H'(0)| with H(w) = 1/g(1/w); evaluate H' = -G'/G^2 at
    // a small w and refine once (the limit is attained linearly in w).
    auto habs = [&](double w0) {
        Jet jg = g_pulled.jet(cplx(w0, 0.0));
        return std::abs(-jg.d1 / (jg.v * jg.v));
    };
    double h1 = habs(2e-6), h2 = habs(1e-6);
    double hp0 = 2.0 * h2 - h1;
    if (!(hp0 > 0) || !(fp0 > 0))
        throw numeric_error("liouville_action: degenerate derivative normalization");
    double log_term = 4.0 * std::log(fp0 * hp0);

    EnergyReport rep;
    rep.method = "liouville";
    rep.resolution.radial_levels = radial_levels;
    rep.resolution.angular_samples = angular_samples;
    // level sums decay geometrically (ratio ~1/2) for finite-energy curves,
    // so the truncated tail beyond the last level is about one last level
    double tail = lf.back() + lg.back();
    rep.value = term_f + term_g + log_term + tail;
    rep.estimated_error = tail + std::abs(h1 - h2);
    // crude divergence probe: deepest refinement level still growing and
    // contributing a visible share of the total
    std::size_t L = lf.size();
    double last = lf[L - 1] + lg[L - 1];
    double prev = lf[L - 2] + lg[L - 2];
    rep.diverged = last > prev && last > 0.05 * std::max(rep.value, 1e-6);
    return rep;
}

EnergyReport loop_energy_liouville(const CurvePolyline& curve, int radial_levels,
                                   int angular_samples, std::size_t resample_budget) {
    CurvePolyline work = curve;
    if (resample_budget > 0 && curve.points.size() != resample_budget)
        work = resample_closed_marked(curve, resample_budget, 0.0);
    DiskCharts dc = disk_charts_from_curve(work);
    EnergyReport rep = liouville_action(dc.f, dc.g, radial_levels, angular_samples);
    rep.resolution.curve_samples = work.points.size();
    if (rep.value < 0) {
        // quadrature noise can push an exact zero slightly negative
        rep.estimated_error = std::max(rep.estimated_error, -rep.value);
        rep.value = 0.0;
    }
    return rep;
}

namespace {

// cumulative chordal arc length from sample `from`, wrapping around
std::vector<double> arclength_from(const CurvePolyline& curve, std::size_t from) {
    std::size_t n = curve.points.size();
    std::vector<double> s(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const SpherePoint& a = curve.points[(from + i) % n];
        const SpherePoint& b = curve.points[(from + i + 1) % n];
        s[i + 1] = s[i] + chordal_dist(a, b);
    }
    return s;
}

SpherePoint point_at(const CurvePolyline& curve, std::size_t from,
                     const std::vector<double>& s, double target) {
    std::size_t n = curve.points.size();
    auto it = std::lower_bound(s.begin(), s.end(), target);
    std::size_t i = std::min<std::size_t>(std::distance(s.begin(), it), n);
    if (i == 0) return curve.points[from % n];
    double seg = s[i] - s[i - 1];
    double w = seg > 0 ? (target - s[i - 1]) / seg : 0.0;
    const SpherePoint& a = curve.points[(from + i - 1) % n];
    const SpherePoint& b = curve.points[(from + i) % n];
    return SpherePoint(a.z * (1.0 - w) + b.z * w);
}

double rooted_energy_at(const CurvePolyline& curve, std::size_t root, double eps,
                        std::size_t samples) {
    auto s = arclength_from(curve, root);
    double L = s.back();
    std::size_t n = curve.points.size();
    if (!(eps > 0) || eps > L / 10.0)
        throw validation_error("loop_energy_driving: epsilon must lie in (0, length/10)");

    // Cut arc gamma[0, eps]. Interpolated points lie exactly on the polyline,
    // so padding the cut with them adds no geometric error.
    SpherePoint cut_end = point_at(curve, root, s, eps);
    std::vector<SpherePoint> cut;
    cut.push_back(curve.points[root]);
    std::size_t first_after = 1;
    for (std::size_t i = 1; i < n; ++i) {
        if (s[i] >= eps) {
            first_after = i;
            break;
        }
        cut.push_back(curve.points[(root + i) % n]);
    }
    if (cut.size() < 9) {
        cut.clear();
        const std::size_t cut_n = 16;
        for (std::size_t i = 0; i < cut_n; ++i)
            cut.push_back(point_at(curve, root, s, eps * i / cut_n));
    }
    if (chordal_dist(cut.back(), cut_end) > 1e-12) cut.push_back(cut_end);
    std::reverse(cut.begin(), cut.end());

    ConformalChart chart = map_arc_complement(cut);

    // Chord gamma[eps, 1] through the curve's own samples: off-vertex points
    // would put sampling-frequency wiggles on the discrete curve and bias the
    // energy upward.
    std::size_t avail = n - first_after;
    std::size_t stride = std::max<std::size_t>(1, avail / samples);
    std::vector<cplx> img;
    img.push_back(cplx(0.0, 0.0));
    for (std::size_t i = first_after; i < n; i += stride) {
        SpherePoint q = chart.map(curve.points[(root + i) % n]);
        if (q.at_inf || std::abs(q.z) > 1e9) break;
        img.push_back(q.z);
    }
    if (img.size() < 16) throw numeric_error("loop_energy_driving: chord image collapsed");
    auto run = detail::unzip(img);
    return dirichlet_energy(run.driving);
}

}  // namespace

EnergyReport loop_energy_driving(const CurvePolyline& curve, std::size_t root_index,
                                 double epsilon, std::size_t samples) {
    if (!curve.closed) throw validation_error("loop_energy_driving: curve must be closed");
    curve.validate("loop_energy_driving");
    {
        std::size_t sa, sb;
        CurvePolyline probe = curve;
        if (!is_simple(probe, &sa, &sb))
            throw validation_error("loop_energy_driving: curve self-intersects at segments " +
                                   std::to_string(sa) + "," + std::to_string(sb));
    }
    if (root_index >= curve.points.size())
        throw validation_error("loop_energy_driving: root index out of range");

    auto s = arclength_from(curve, root_index);
    double L = s.back();
    double eps = epsilon > 0 ? epsilon : L / 50.0;
    if (eps > L / 10.0)
        throw validation_error("loop_energy_driving: epsilon too large (must be < length/10)");

    double e1 = rooted_energy_at(curve, root_index, eps, samples);
    double e2 = rooted_energy_at(curve, root_index, eps / 2.0, samples);

    EnergyReport rep;
    rep.method = "rooted-driving";
    rep.value = std::max(0.0, 2.0 * e2 - e1);  // linear extrapolation to eps -> 0
    rep.estimated_error = std::abs(e2 - e1);
    rep.resolution.curve_samples = samples;
    rep.resolution.epsilon = eps;
    rep.resolution.epsilon_second = eps / 2.0;
    return rep;
}

EnergyReport arc_energy(const CurvePolyline& arc, std::size_t resample_budget) {
    if (arc.closed) throw validation_error("arc_energy: input must be an open arc");
    arc.validate("arc_energy");

    ConformalChart chart = map_arc_complement(arc.points);
    CurvePolyline geo = hyperbolic_geodesic(chart, arc.points.front(), arc.points.back(),
                                            160, 1e-5, 1e5);
    // closed curve: the arc (tail -> head) followed by the geodesic, reversed
    // (head -> tail)
    CurvePolyline loop;
    loop.closed = true;
    loop.marks = {0, arc.points.size() - 1};
    loop.points = arc.points;
    for (std::size_t i = geo.points.size() - 1; i >= 1; --i) {
        const SpherePoint& p = geo.points[i];
        if (!p.finite()) continue;
        if (chordal_dist(p, loop.points.back()) < 1e-10) continue;
        if (chordal_dist(p, loop.points.front()) < 1e-10) continue;
        loop.points.push_back(p);
    }
    // The closing geodesic may run through (or near) infinity, e.g. for a
    // straight segment. Loop energy is Moebius invariant, so renormalize by
    // sending three spread arc points to `1, i, -1`; retry with other source
    // triples if the image still reaches out too far.
    std::size_t asz = arc.points.size();
    const SpherePoint t1(1.0, 0.0), t2(0.0, 1.0), t3(-1.0, 0.0);
    CurvePolyline best;
    double best_span = std::numeric_limits<double>::infinity();
    for (std::size_t attempt = 0; attempt < 3 && best_span > 50.0; ++attempt) {
        std::size_t mid = asz / 2 + attempt * asz / 7;
        if (mid >= asz - 1) mid = asz / 2;
        MobiusComplex m = mobius_from_triple(arc.points.front(), arc.points[mid],
                                             arc.points.back(), t1, t2, t3);
        CurvePolyline cand = loop;
        double span = 0;
        bool ok = true;
        for (auto& p : cand.points) {
            p = m.apply(p);
            if (!p.finite()) {
                ok = false;
                break;
            }
            span = std::max(span, std::abs(p.z));
        }
        if (ok && span < best_span) {
            best_span = span;
            best = cand;
        }
    }
    if (!(best_span < 1e6))
        throw numeric_error("arc_energy: could not renormalize the closed-up arc");
    CurvePolyline rs = resample_closed_marked(best, resample_budget, 0.0);
    EnergyReport rep = loop_energy_liouville(rs, 11, 384, 0);
    rep.resolution.curve_samples = rs.points.size();
    return rep;
}

cplx schwarzian(const ConformalChart& chart, const SpherePoint& z) {
    if (!z.finite()) throw validation_error("schwarzian: point must be finite");
    return schwarzian_of(chart.jet(z.z));
}

}  // namespace loewner
