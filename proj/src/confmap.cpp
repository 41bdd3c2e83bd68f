#include "loewner/confmap.hpp"

#include <algorithm>
#include <cmath>

#include "loewner/zipper.hpp"

namespace loewner {

namespace {

// Affine conditioning map (z - c0)/s0 over the finite points.
MobiusComplex conditioning_affine(const std::vector<SpherePoint>& pts) {
    cplx c0{0.0, 0.0};
    std::size_t n = 0;
    for (const auto& p : pts)
        if (p.finite()) {
            c0 += p.z;
            ++n;
        }
    if (n == 0) throw validation_error("conditioning: no finite points");
    c0 /= static_cast<double>(n);
    double s0 = 0;
    for (const auto& p : pts)
        if (p.finite()) s0 = std::max(s0, std::abs(p.z - c0));
    if (s0 == 0) s0 = 1.0;
    return MobiusComplex(1.0 / s0, -c0 / s0, 0.0, 1.0);
}

// Moebius pulling an arc through (or near) infinity into a bounded region.
MobiusComplex rebounding_mobius(const std::vector<SpherePoint>& pts) {
    cplx c0{0.0, 0.0};
    double s0 = 0.0;
    std::size_t n = 0;
    for (const auto& p : pts)
        if (p.finite() && std::abs(p.z) < 1e8) {
            c0 += p.z;
            ++n;
        }
    if (n == 0) throw validation_error("rebounding: arc has no usable finite points");
    c0 /= static_cast<double>(n);
    for (const auto& p : pts)
        if (p.finite() && std::abs(p.z) < 1e8) s0 = std::max(s0, std::abs(p.z - c0));
    if (s0 == 0) s0 = 1.0;
    // Pole placed off the arc; if it accidentally grazes a sample, nudge it.
    cplx q = c0 + s0 * cplx(2.7, 2.3);
    for (int attempt = 0; attempt < 8; ++attempt) {
        double dmin = std::numeric_limits<double>::infinity();
        for (const auto& p : pts)
            if (p.finite()) dmin = std::min(dmin, std::abs(p.z - q));
        if (dmin > 0.2 * s0) break;
        q += s0 * cplx(0.31, 0.77);
    }
    return MobiusComplex(0.0, 1.0, 1.0, -q);
}

bool needs_rebounding(const std::vector<SpherePoint>& pts) {
    for (const auto& p : pts)
        if (p.at_inf || std::abs(p.z) > 1e8) return true;
    return false;
}

// Base links of a zipper run: z -> i*sqrt((z - znext)/(z - zfar)), which is
// the exact chart of the complement of the straight cut [zfar, znext].
void push_base_links(ConformalChart& chain, cplx zfar, cplx znext) {
    chain.push_mobius(MobiusComplex(1.0, -znext, 1.0, -zfar));
    chain.push(ElementaryMap::make_sqrt());
    chain.push_mobius(MobiusComplex(cplx(0.0, 1.0), 0.0, 0.0, 1.0));
}

}  // namespace

MobiusComplex normalize_bounded(const std::vector<SpherePoint>& pts) {
    if (!needs_rebounding(pts)) return conditioning_affine(pts);
    MobiusComplex n = rebounding_mobius(pts);
    std::vector<SpherePoint> moved;
    moved.reserve(pts.size());
    for (const auto& p : pts) moved.push_back(n.apply(p));
    return compose(conditioning_affine(moved), n);
}

ConformalChart map_arc_complement(const std::vector<SpherePoint>& arc) {
    if (arc.size() < 3) throw validation_error("map_arc_complement: need >= 3 samples");
    if (chordal_dist(arc.front(), arc.back()) < 1e-12)
        throw validation_error("map_arc_complement: arc endpoints coincide");

    ConformalChart chain;
    std::vector<cplx> pts;
    pts.reserve(arc.size());
    if (needs_rebounding(arc)) {
        MobiusComplex n = rebounding_mobius(arc);
        chain.push_mobius(n);
        for (const auto& p : arc) {
            SpherePoint q = n.apply(p);
            if (q.at_inf) throw numeric_error("map_arc_complement: rebounding failed");
            pts.push_back(q.z);
        }
    } else {
        for (const auto& p : arc) pts.push_back(p.z);
    }
    {
        std::vector<SpherePoint> tmp(pts.begin(), pts.end());
        MobiusComplex a = conditioning_affine(tmp);
        chain.push_mobius(a);
        for (auto& z : pts) z = a.apply(SpherePoint(z)).z;
    }
    {
        CurvePolyline probe;
        for (auto& z : pts) probe.points.emplace_back(z);
        probe.validate("map_arc_complement");
        std::size_t sa, sb;
        if (!is_simple(probe, &sa, &sb))
            throw validation_error("map_arc_complement: arc self-intersects at segments " +
                                   std::to_string(sa) + "," + std::to_string(sb));
    }

    // Base cut [a0, a1]: tail a0 -> inf for now, a1 -> 0.
    std::size_t before = chain.links.size();
    push_base_links(chain, pts[0], pts[1]);
    std::vector<cplx> run_pts;
    run_pts.push_back(cplx(0.0, 0.0));
    for (std::size_t j = 2; j < pts.size(); ++j) {
        SpherePoint q(pts[j]);
        for (std::size_t l = before; l < chain.links.size(); ++l)
            q = chain.links[l].map.apply(q);
        run_pts.push_back(q.z);
    }
    auto run = detail::unzip(run_pts);
    for (const auto& s : run.steps) chain.push(s);
    // tail (at inf) -> 0, head (at W_F) -> inf
    double wf = run.driving.values.back();
    chain.push_mobius(MobiusComplex(0.0, -1.0, 1.0, -wf));
    return chain;
}

SpherePoint interior_point(const CurvePolyline& curve) {
    std::size_t n = curve.points.size();
    auto winding_inside = [&](cplx p) {
        double total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            cplx a = curve.points[i].z - p, b = curve.points[(i + 1) % n].z - p;
            total += std::arg(b / a);
        }
        return std::abs(total) > kPi;  // |winding| >= 1
    };
    cplx centroid{0, 0};
    for (const auto& p : curve.points) centroid += p.z;
    centroid /= static_cast<double>(n);
    if (winding_inside(centroid)) return SpherePoint(centroid);
    // probe inward offsets from edge midpoints
    for (std::size_t i = 0; i < n; ++i) {
        cplx a = curve.points[i].z, b = curve.points[(i + 1) % n].z;
        cplx mid = 0.5 * (a + b), dir = b - a;
        double len = std::abs(dir);
        if (len == 0) continue;
        dir /= len;
        for (double f : {0.5, 0.15, 0.05}) {
            cplx cand = mid + cplx(0, 1) * dir * (f * len);
            if (winding_inside(cand)) return SpherePoint(cand);
        }
    }
    throw numeric_error("interior_point: could not locate the bounded side");
}

DiskCharts disk_charts_from_curve(const CurvePolyline& curve) {
    if (!curve.closed) throw validation_error("disk_charts: curve must be closed");
    if (curve.points.size() < 8) throw validation_error("disk_charts: too few samples");
    for (const auto& p : curve.points)
        if (!p.finite()) throw validation_error("disk_charts: curve passes through infinity");
    curve.validate("disk_charts");
    {
        std::size_t sa, sb;
        CurvePolyline probe = curve;
        if (!is_simple(probe, &sa, &sb))
            throw validation_error("disk_charts: curve self-intersects at segments " +
                                   std::to_string(sa) + "," + std::to_string(sb));
    }

    CurvePolyline work = curve;
    bool reversed = false;
    if (!is_counterclockwise(work)) {
        reverse_orientation(work);
        reversed = true;
    }
    std::size_t n = work.points.size();

    // Start the zipper as far from the marks as possible (the base cut and the
    // terminal ray are the lowest-accuracy spots).
    std::size_t j0 = 0;
    if (!work.marks.empty()) {
        long best = -1;
        for (std::size_t i = 0; i < n; ++i) {
            long dmin = static_cast<long>(n);
            for (std::size_t m : work.marks) {
                long d = std::abs(static_cast<long>(i) - static_cast<long>(m));
                d = std::min<long>(d, n - d);
                dmin = std::min(dmin, d);
            }
            if (dmin > best) {
                best = dmin;
                j0 = i;
            }
        }
    }
    std::vector<cplx> rot(n);
    for (std::size_t i = 0; i < n; ++i) rot[i] = work.points[(j0 + i) % n].z;

    ConformalChart pre;  // common chain up to (not incl.) the terminal maps
    {
        std::vector<SpherePoint> tmp(rot.begin(), rot.end());
        MobiusComplex a = conditioning_affine(tmp);
        pre.push_mobius(a);
        for (auto& z : rot) z = a.apply(SpherePoint(z)).z;
    }
    std::size_t base_from = pre.links.size();
    push_base_links(pre, rot[0], rot[1]);

    SpherePoint omega_probe = interior_point(work);
    SpherePoint inf_img = SpherePoint::infinity();
    SpherePoint probe_img = omega_probe;
    std::vector<cplx> run_pts;
    run_pts.push_back(cplx(0.0, 0.0));
    for (std::size_t j = 2; j < n; ++j) {
        SpherePoint q(rot[j]);  // rot[] is already conditioned: base links only
        for (std::size_t l = base_from; l < pre.links.size(); ++l)
            q = pre.links[l].map.apply(q);
        run_pts.push_back(q.z);
    }
    for (std::size_t l = 0; l < pre.links.size(); ++l) {
        inf_img = pre.links[l].map.apply(inf_img);
        probe_img = pre.links[l].map.apply(probe_img);
    }

    auto run = detail::unzip(run_pts, {inf_img, probe_img});
    for (const auto& s : run.steps) pre.push(s);
    double wf = run.driving.values.back();
    inf_img = run.tracked[0];
    probe_img = run.tracked[1];
    if (!probe_img.finite() || !inf_img.finite())
        throw numeric_error("disk_charts: tracked point escaped to infinity");

    bool omega_is_left = probe_img.z.real() < wf;

    auto terminal = [&](bool left) {
        ConformalChart t;
        if (left)
            t.push_mobius(MobiusComplex(cplx(0.0, -1.0), cplx(0.0, 1.0) * wf, 0.0, 1.0));
        else
            t.push_mobius(MobiusComplex(1.0, -wf, 0.0, 1.0));
        t.push(ElementaryMap::make_square());
        return t;
    };
    ConformalChart to_in = pre.then(terminal(omega_is_left));
    ConformalChart to_out = pre.then(terminal(!omega_is_left));

    auto terminal_real = [&](bool left, double x) {
        double d = x - wf;
        return left ? -d * d : d * d;
    };

    // Half-plane boundary positions per rotated index.
    std::vector<double> bin(n), bout(n);
    const double kInf = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double fl, fr;
        if (i == 0) {
            fl = fr = kInf;
        } else if (i == n - 1) {
            fl = fr = wf;
        } else {
            fl = run.foot_left[i - 1];
            fr = run.foot_right[i - 1];
        }
        double fin = omega_is_left ? fl : fr;
        double fout = omega_is_left ? fr : fl;
        bin[i] = std::isinf(fin) ? kInf : terminal_real(omega_is_left, fin);
        bout[i] = std::isinf(fout) ? kInf : terminal_real(!omega_is_left, fout);
    }

    // Disk-side normalizers: the disk centers go to the images of an interior
    // probe point (for f) and of infinity (for g), which keeps both charts at
    // the natural scale of the half-plane picture.
    SpherePoint s_out = terminal(!omega_is_left).map(inf_img);
    SpherePoint s_in = terminal(omega_is_left).map(probe_img);
    if (!s_out.finite() || !(s_out.z.imag() > 0) || !s_in.finite() || !(s_in.z.imag() > 0))
        throw numeric_error("disk_charts: normalization point is invalid");
    MobiusComplex cayley(cplx(0.0, 1.0), cplx(0.0, 1.0), -1.0, 1.0);  // w -> i(1+w)/(1-w)
    MobiusComplex ext(cplx(0.0, 1.0), cplx(0.0, -1.0), 1.0, 1.0);     // w -> i(w-1)/(w+1)
    MobiusComplex cayley_in =
        compose(MobiusComplex(s_in.z.imag(), s_in.z.real(), 0.0, 1.0), cayley);
    MobiusComplex m_g =
        compose(MobiusComplex(s_out.z.imag(), s_out.z.real(), 0.0, 1.0), ext);

    DiskCharts out;
    out.to_h_in = to_in;
    out.to_h_out = to_out;
    out.ray_foot = wf;
    {
        ConformalChart fc;
        fc.push_mobius(cayley_in);
        out.f = fc.then(to_in.inverted());
        ConformalChart gc;
        gc.push_mobius(m_g);
        out.g = gc.then(to_out.inverted());
    }

    // Boundary angles per original sample index.
    out.theta.assign(n, 0.0);
    out.psi.assign(n, 0.0);
    out.bnd_in.assign(n, 0.0);
    out.bnd_out.assign(n, 0.0);
    MobiusComplex cay_inv = cayley_in.inverse();
    MobiusComplex mg_inv = m_g.inverse();
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t oi = (j0 + i) % n;  // rotated -> original (ccw order)
        SpherePoint pin = std::isinf(bin[i]) ? SpherePoint::infinity() : SpherePoint(bin[i], 0.0);
        SpherePoint pout = std::isinf(bout[i]) ? SpherePoint::infinity() : SpherePoint(bout[i], 0.0);
        SpherePoint uf = cay_inv.apply(pin);
        SpherePoint ug = mg_inv.apply(pout);
        if (uf.at_inf || ug.at_inf)
            throw numeric_error("disk_charts: boundary angle at infinity");
        double th = wrap_angle(std::arg(uf.z));
        double ps = wrap_angle(std::arg(ug.z));
        std::size_t orig = reversed ? (n - 1 - oi) % n : oi;
        out.theta[orig] = th;
        out.psi[orig] = ps;
        out.bnd_in[orig] = bin[i];
        out.bnd_out[orig] = bout[i];
    }
    return out;
}

ConformalChart jordan_domain_chart(const CurvePolyline& boundary, std::size_t ia,
                                   std::size_t ib, const SpherePoint& interior_hint) {
    if (ia == ib) throw validation_error("jordan_domain_chart: prime ends coincide");
    // mark the prime ends so the zipper seam stays away from them
    CurvePolyline marked = boundary;
    marked.marks = {std::min(ia, ib), std::max(ia, ib)};
    DiskCharts dc = disk_charts_from_curve(marked);
    // which side holds the hint?
    SpherePoint img = dc.to_h_in.map(interior_hint);
    bool inside = img.finite() && img.z.imag() > 0;
    // the inside chart can map outside points to the lower half; double-check
    SpherePoint img_out = dc.to_h_out.map(interior_hint);
    bool outside = img_out.finite() && img_out.z.imag() > 0;
    const ConformalChart& chain = inside ? dc.to_h_in : dc.to_h_out;
    const std::vector<double>& bnd = inside ? dc.bnd_in : dc.bnd_out;
    if (!inside && !outside)
        throw numeric_error("jordan_domain_chart: hint not resolvable to a side");
    double xa = bnd[ia], xb = bnd[ib];
    if (std::isinf(xa) || std::isinf(xb))
        throw numeric_error("jordan_domain_chart: prime end at the zipper seam; "
                            "choose different samples");
    ConformalChart out = chain;
    double det = xa - xb;
    MobiusComplex r2 = det > 0 ? MobiusComplex(1.0, -xa, 1.0, -xb)
                               : MobiusComplex(-1.0, xa, 1.0, -xb);
    out.push_mobius(r2);
    return out;
}

CurvePolyline hyperbolic_geodesic(const ConformalChart& chart, const SpherePoint& a,
                                  const SpherePoint& b, std::size_t samples,
                                  double y_min, double y_max, double cluster) {
    if (samples < 3) throw validation_error("hyperbolic_geodesic: need >= 3 samples");
    // prime ends are two-sided boundary points; check them through the
    // pullback limits rather than by direct evaluation
    if (chordal_dist(chart.inverse(SpherePoint(0.0, y_min)), a) > 1e-2)
        throw validation_error("hyperbolic_geodesic: chart does not send a to 0");
    if (chordal_dist(chart.inverse(SpherePoint(0.0, y_max)), b) > 1e-2)
        throw validation_error("hyperbolic_geodesic: chart does not send b to infinity");

    // Coarse scan over heights, then redistribute so the samples are graded
    // by chordal arc length with clustering toward the prime ends. Every
    // output point is evaluated from the chart at its own height, never
    // interpolated between pullbacks.
    const std::size_t coarse_n = std::max<std::size_t>(240, samples / 2);
    std::vector<double> logy(coarse_n), cum(coarse_n + 2, 0.0);
    std::vector<SpherePoint> coarse(coarse_n);
    double l0 = std::log(y_min), l1 = std::log(y_max);
    for (std::size_t j = 0; j < coarse_n; ++j) {
        logy[j] = l0 + (l1 - l0) * (static_cast<double>(j) / (coarse_n - 1));
        coarse[j] = chart.inverse(SpherePoint(0.0, std::exp(logy[j])));
    }
    cum[0] = 0.0;
    cum[1] = chordal_dist(a, coarse[0]);
    for (std::size_t j = 1; j < coarse_n; ++j)
        cum[j + 1] = cum[j] + chordal_dist(coarse[j - 1], coarse[j]);
    cum[coarse_n + 1] = cum[coarse_n] + chordal_dist(coarse[coarse_n - 1], b);
    double total = cum[coarse_n + 1];
    if (!(total > 0)) throw numeric_error("hyperbolic_geodesic: degenerate pullback");

    CurvePolyline out;
    out.points.push_back(a);
    const double kappa = cluster;
    for (std::size_t j = 1; j + 1 < samples; ++j) {
        double u = static_cast<double>(j) / (samples - 1);
        double frac = 0.5 * (1.0 + std::tanh(kappa * (2 * u - 1)) / std::tanh(kappa));
        double target = frac * total;
        auto it = std::upper_bound(cum.begin(), cum.end(), target);
        std::size_t i = std::min<std::size_t>(std::distance(cum.begin(), it), coarse_n + 1);
        if (i == 0) i = 1;
        // interpolate in log-height between scan nodes (ends clamp to nodes)
        double ly;
        if (i == 1) {
            ly = logy[0];
        } else if (i == coarse_n + 1) {
            ly = logy[coarse_n - 1];
        } else {
            double w = (target - cum[i - 1]) / std::max(cum[i] - cum[i - 1], 1e-300);
            ly = logy[i - 2] * (1.0 - w) + logy[i - 1] * w;
        }
        SpherePoint p = chart.inverse(SpherePoint(0.0, std::exp(ly)));
        if (chordal_dist(p, out.points.back()) < 1e-13) continue;
        out.points.push_back(p);
    }
    if (chordal_dist(out.points.back(), b) < 1e-13) out.points.pop_back();
    out.points.push_back(b);
    return out;
}

}  // namespace loewner
