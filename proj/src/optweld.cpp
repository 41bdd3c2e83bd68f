#include <cstdio>
#include <cstdlib>
#include "loewner/optweld.hpp"

#include <algorithm>
#include <cmath>

#include "loewner/confmap.hpp"
#include "loewner/energy.hpp"

namespace loewner {

CurvePolyline constrained_biarc_search(const std::vector<double>& x,
                                       const std::vector<double>& y,
                                       std::vector<double>& phi,
                                       std::vector<double>& rad,
                                       std::vector<double>& tau,
                                       std::size_t weld_samples, double target,
                                       std::size_t max_iter);

void WeldProblem::validate() const {
    std::size_t n = x.size();
    if (n < 3 || y.size() != n)
        throw validation_error("weld problem: need n >= 3 constraint pairs");
    for (std::size_t k = 0; k < n; ++k) {
        double dx = wrap_angle(x[(k + 1) % n] - x[k]);
        double dy = wrap_angle(y[(k + 1) % n] - y[k]);
        if (!(dx > 1e-9) || !(dy > 1e-9))
            throw validation_error("weld problem: constraint angles must be strictly "
                                   "cyclically increasing");
    }
    if (initial.marks.size() != n)
        throw validation_error("weld problem: initial curve must mark every constraint");
    if (!(tol > 0)) throw validation_error("weld problem: tolerance must be positive");
}

namespace {

struct CircleFit {
    Circline circ;
    double residual = 0.0;
};

CircleFit fit_circline(const std::vector<SpherePoint>& pts) {
    // Kasa algebraic fit: minimize sum (|z|^2 + D x + E y + F)^2, with a
    // total-least-squares line as fallback for straight data.
    double sxx = 0, sxy = 0, syy = 0, sx = 0, sy = 0, s1 = 0;
    double sxz = 0, syz = 0, sz = 0;
    for (const auto& p : pts) {
        double x = p.z.real(), y = p.z.imag(), z = x * x + y * y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
        sx += x;
        sy += y;
        s1 += 1;
        sxz += x * z;
        syz += y * z;
        sz += z;
    }
    // normal equations for (D, E, F)
    double A[3][3] = {{sxx, sxy, sx}, {sxy, syy, sy}, {sx, sy, s1}};
    double b[3] = {-sxz, -syz, -sz};
    // gaussian elimination with partial pivoting
    int piv[3] = {0, 1, 2};
    double M[3][4];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) M[i][j] = A[i][j];
        M[i][3] = b[i];
    }
    bool singular = false;
    for (int c = 0; c < 3; ++c) {
        int best = c;
        for (int r = c + 1; r < 3; ++r)
            if (std::abs(M[r][c]) > std::abs(M[best][c])) best = r;
        if (std::abs(M[best][c]) < 1e-12 * (std::abs(sxx) + std::abs(syy) + 1.0)) {
            singular = true;
            break;
        }
        std::swap(M[c], M[best]);
        std::swap(piv[c], piv[best]);
        for (int r = c + 1; r < 3; ++r) {
            double f = M[r][c] / M[c][c];
            for (int j = c; j < 4; ++j) M[r][j] -= f * M[c][j];
        }
    }
    CircleFit circle_fit;
    circle_fit.residual = std::numeric_limits<double>::infinity();
    double spread = 0;
    cplx mean(sx / s1, sy / s1);
    for (const auto& p : pts) spread = std::max(spread, std::abs(p.z - mean));
    if (!singular) {
        double sol[3];
        for (int r = 2; r >= 0; --r) {
            double acc = M[r][3];
            for (int j = r + 1; j < 3; ++j) acc -= M[r][j] * sol[j];
            sol[r] = acc / M[r][r];
        }
        cplx center(-sol[0] / 2.0, -sol[1] / 2.0);
        double r2 = std::norm(center) - sol[2];
        if (r2 > 0 && std::sqrt(r2) < 1e5 * spread) {
            circle_fit.circ.is_line = false;
            circle_fit.circ.center = center;
            circle_fit.circ.radius = std::sqrt(r2);
            double worst = 0;
            for (const auto& p : pts) worst = std::max(worst, circle_fit.circ.dist(p));
            circle_fit.residual = worst;
        }
    }
    // line fit via the principal direction of the centered cloud
    double cxx = sxx - sx * sx / s1, cxy = sxy - sx * sy / s1, cyy = syy - sy * sy / s1;
    double theta = 0.5 * std::atan2(2 * cxy, cxx - cyy);
    CircleFit line_fit;
    line_fit.circ.is_line = true;
    line_fit.circ.point = mean;
    line_fit.circ.dir = std::polar(1.0, theta);
    {
        double worst = 0;
        for (const auto& p : pts) worst = std::max(worst, line_fit.circ.dist(p));
        line_fit.residual = worst;
    }
    return line_fit.residual < circle_fit.residual ? line_fit : circle_fit;
}

// unit tangent of the fitted circline at p, oriented along the travel hint
cplx oriented_tangent(const Circline& c, cplx p, cplx travel) {
    cplx t = c.tangent_at(p);
    if ((t * std::conj(travel)).real() < 0) t = -t;
    return t;
}

}  // namespace

std::vector<CircularFitReport> circular_fit_report(const CurvePolyline& curve) {
    if (curve.marks.size() < 2)
        throw validation_error("circular_fit_report: marks required");
    std::size_t n = curve.marks.size();
    std::vector<CircularFitReport> out(n);
    std::vector<std::vector<SpherePoint>> arcs(n);
    for (std::size_t k = 0; k < n; ++k) {
        arcs[k] = curve.arc_between_marks(k);
        CircleFit fit = fit_circline(arcs[k]);
        out[k].circ = fit.circ;
        out[k].residual = fit.residual;
    }
    for (std::size_t k = 0; k < n; ++k) {
        // joint at the starting breakpoint of arc k
        const auto& prev = arcs[(k + n - 1) % n];
        const auto& cur = arcs[k];
        cplx p = cur.front().z;
        cplx travel_in = prev.back().z - prev[prev.size() - 2].z;
        cplx travel_out = cur[1].z - cur.front().z;
        cplx t_in = oriented_tangent(out[(k + n - 1) % n].circ, p, travel_in);
        cplx t_out = oriented_tangent(out[k].circ, p, travel_out);
        double c = std::clamp(-(t_in.real() * t_out.real() + t_in.imag() * t_out.imag()),
                              -1.0, 1.0);
        out[k].joint_angle = std::acos(c);
    }
    return out;
}

StraightenResult arc_straighten_step(const CurvePolyline& curve, std::size_t k,
                                     std::size_t arc_budget, std::size_t weld_samples) {
    if (curve.marks.size() < 3)
        throw validation_error("arc_straighten_step: need >= 3 marks");
    std::size_t n = curve.marks.size();
    k %= n;

    std::vector<SpherePoint> arc_k = curve.arc_between_marks(k);  // p_k -> p_{k+1}
    ConformalChart chart = map_arc_complement(arc_k);             // p_k -> 0, p_{k+1} -> inf

    // square map opens the complement; the straightened arc becomes R+
    auto open_point = [&](const SpherePoint& p) -> SpherePoint {
        SpherePoint q = chart.map(p);
        if (q.at_inf) return q;
        return SpherePoint(q.z * q.z);
    };

    // Renormalize to a bounded representative: the opened breakpoints go to
    // 1 and -1, and infinity goes to a point deep inside the image of the old
    // exterior, which keeps the bounded/unbounded sides (and with them the
    // welding's two circles) in their roles. Candidates far outside the old
    // curve are all in the exterior; take the one with the best chordal
    // clearance from the new curve.
    double reach = 0;
    for (const auto& p : curve.points)
        if (p.finite()) reach = std::max(reach, std::abs(p.z));
    std::vector<SpherePoint> shadow;  // s-plane images of the curve samples
    for (const auto& p : curve.points) {
        try {
            SpherePoint q = open_point(p);
            if (q.finite()) shadow.push_back(q);
        } catch (const numeric_error&) {
            // samples of arc k itself graze the slit; they are represented by
            // the R+ ray below
        }
    }
    for (int i = 0; i <= 40; ++i)  // the straightened arc runs along R+
        shadow.push_back(SpherePoint(std::pow(10.0, -4.0 + 0.2 * i), 0.0));
    // the chart scale is arbitrary; normalize before measuring chordal
    // clearances or everything crowds toward one end of the sphere
    double med_scale = 1.0;
    {
        std::vector<double> mags;
        for (const auto& q : shadow)
            if (std::abs(q.z) > 1e-9) mags.push_back(std::abs(q.z));
        if (!mags.empty()) {
            std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
            med_scale = mags[mags.size() / 2];
        }
    }
    auto rescaled = [&](const SpherePoint& p) {
        return p.finite() ? SpherePoint(p.z / med_scale) : p;
    };
    SpherePoint pivot;
    double best_clear = -1.0;
    // everything outside |z| = reach lies in the old exterior; points just
    // outside the curve map across the whole exterior image, while far
    // points all collapse near the image of infinity
    for (double radius : {1.05, 1.15, 1.35, 1.7, 2.5, 6.0}) {
        for (int j = 0; j < 16; ++j) {
            SpherePoint cand;
            try {
                cand = open_point(
                    SpherePoint(std::polar(radius * reach, 0.37 + kTwoPi * j / 16.0)));
            } catch (const numeric_error&) {
                continue;
            }
            if (!cand.finite()) continue;
            double clear = 2.0;
            for (const auto& q : shadow)
                clear = std::min(clear, chordal_dist(rescaled(cand), rescaled(q)));
            if (clear > best_clear) {
                best_clear = clear;
                pivot = cand;
            }
        }
    }
    if (!(best_clear > 1e-5))
        throw numeric_error("arc_straighten_step: no usable renormalization pivot");
    MobiusComplex renorm = mobius_from_triple(
        SpherePoint(0.0, 0.0), pivot, SpherePoint::infinity(), SpherePoint(1.0, 0.0),
        SpherePoint::infinity(), SpherePoint(-1.0, 0.0));

    CurvePolyline out;
    out.closed = true;
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t jj = (k + j) % n;  // start assembly at the straightened arc
        out.marks.push_back(out.points.size());
        std::vector<SpherePoint> arc;
        if (jj == k) {
            // The new arc runs along M(R+) from M(0) = 1 to M(inf) = -1.
            // Scan in log x, then redistribute by chordal arc length with
            // endpoint clustering.
            const double span = 18.0;
            const std::size_t coarse_n = 160;
            std::vector<SpherePoint> coarse(coarse_n);
            std::vector<double> cum(coarse_n + 2, 0.0);
            for (std::size_t i = 0; i < coarse_n; ++i) {
                double g = span * (2.0 * i / (coarse_n - 1) - 1.0);
                coarse[i] = renorm.apply(SpherePoint(std::exp(g), 0.0));
            }
            SpherePoint front(1.0, 0.0), back(-1.0, 0.0);
            cum[1] = chordal_dist(front, coarse[0]);
            for (std::size_t i = 1; i < coarse_n; ++i)
                cum[i + 1] = cum[i] + chordal_dist(coarse[i - 1], coarse[i]);
            cum[coarse_n + 1] = cum[coarse_n] + chordal_dist(coarse[coarse_n - 1], back);
            double total = cum[coarse_n + 1];
            arc.push_back(front);
            for (std::size_t i = 1; i + 1 < arc_budget; ++i) {
                double u = static_cast<double>(i) / (arc_budget - 1);
                double frac = 0.5 * (1.0 + std::tanh(1.4 * (2 * u - 1)) / std::tanh(1.4));
                double target = frac * total;
                auto it = std::upper_bound(cum.begin(), cum.end(), target);
                std::size_t ix = std::min<std::size_t>(std::distance(cum.begin(), it),
                                                       coarse_n + 1);
                if (ix == 0) ix = 1;
                double g;
                if (ix == 1) {
                    g = -span;
                } else if (ix == coarse_n + 1) {
                    g = span;
                } else {
                    double w = (target - cum[ix - 1]) /
                               std::max(cum[ix] - cum[ix - 1], 1e-300);
                    double g0 = span * (2.0 * (ix - 2) / (coarse_n - 1) - 1.0);
                    double g1 = span * (2.0 * (ix - 1) / (coarse_n - 1) - 1.0);
                    g = g0 * (1.0 - w) + g1 * w;
                }
                SpherePoint q = renorm.apply(SpherePoint(std::exp(g), 0.0));
                if (!q.finite()) continue;
                if (!arc.empty() && chordal_dist(arc.back(), q) < 1e-12) continue;
                arc.push_back(q);
            }
            arc.push_back(back);
        } else {
            std::vector<SpherePoint> old = curve.arc_between_marks(jj);
            for (const auto& p : old) {
                SpherePoint q = renorm.apply(open_point(p));
                if (!q.finite())
                    throw numeric_error("arc_straighten_step: arc point escaped");
                // the square map collapses spacings quadratically near the
                // opened breakpoints; drop the collapsed points
                if (!arc.empty() && chordal_dist(arc.back(), q) < 1e-11) continue;
                arc.push_back(q);
            }
            if (arc.size() < 5)
                throw numeric_error("arc_straighten_step: arc image collapsed");
            // micro-points hugging the joints carry no usable shape and can
            // graze the adjacent arc at machine scale
            {
                std::vector<SpherePoint> trimmed;
                trimmed.push_back(arc.front());
                for (std::size_t i = 1; i + 1 < arc.size(); ++i) {
                    if (chordal_dist(arc[i], arc.front()) < 1e-6 ||
                        chordal_dist(arc[i], arc.back()) < 1e-6)
                        continue;
                    trimmed.push_back(arc[i]);
                }
                trimmed.push_back(arc.back());
                arc = std::move(trimmed);
            }
            // keep every usable mapped vertex: arc sizes stay bounded because
            // each arc is rebuilt from `arc_budget` fresh samples whenever its
            // own turn comes
            if (arc.size() > 3 * arc_budget)
                arc = downsample_vertices(arc, 3 * arc_budget, 1.5);
        }
        for (std::size_t i = 0; i + 1 < arc.size(); ++i) {
            if (!arc[i].finite())
                throw numeric_error("arc_straighten_step: interior point escaped");
            if (!out.points.empty() && chordal_dist(out.points.back(), arc[i]) < 1e-12)
                continue;
            out.points.push_back(arc[i]);
        }
    }
    // rotate marks back so mark index j still labels breakpoint j
    std::rotate(out.marks.begin(), out.marks.end() - static_cast<long>(k % n),
                out.marks.end());


    std::size_t sa, sb;
    if (!is_simple(out, &sa, &sb)) {
        if (std::getenv("LOEWNER_DEBUG_DUMP")) {
            std::fprintf(stderr, "SELF-X at %zu,%zu of %zu\n", sa, sb, out.points.size());
            for (std::size_t i = (sa > 4 ? sa - 4 : 0); i < std::min(out.points.size(), sb + 5); ++i)
                std::fprintf(stderr, "  pt[%zu] = (%.12f, %.12f)\n", i,
                             out.points[i].z.real(), out.points[i].z.imag());
        }
        throw numeric_error("arc_straighten_step: straightened curve self-intersects "
                            "at segments " + std::to_string(sa) + "," + std::to_string(sb));
    }

    StraightenResult res;
    res.curve = out;
    res.welding = welding_from_curve(out, weld_samples);
    return res;
}

WeldingSamples align_to_constraints(const WeldingSamples& w,
                                    const std::vector<double>& x,
                                    const std::vector<double>& y, double* residual) {
    std::size_t n = x.size();
    if (w.break_x.size() != n)
        throw validation_error("align_to_constraints: breakpoint count mismatch");
    std::size_t i0 = 0, i1 = n / 3, i2 = (2 * n) / 3;
    if (i1 == i0) i1 = (i0 + 1) % n;
    if (i2 == i1) i2 = (i1 + 1) % n;
    MobiusReal alpha = mobius_real_from_angles(w.break_x[i0], w.break_x[i1],
                                               w.break_x[i2], x[i0], x[i1], x[i2]);
    MobiusReal beta = mobius_real_from_angles(w.break_y[i0], w.break_y[i1],
                                              w.break_y[i2], y[i0], y[i1], y[i2]);
    WeldingSamples aligned = transform_welding(w, alpha, beta);
    if (residual) {
        double worst = 0;
        for (std::size_t j = 0; j < n; ++j) {
            worst = std::max(worst, angle_dist(aligned.eval(x[j]), y[j]));
            worst = std::max(worst, angle_dist(alpha.apply_angle(w.break_x[j]), x[j]));
        }
        *residual = worst;
    }
    return aligned;
}

WeldMinimizeResult minimize_welding(const WeldProblem& problem) {
    problem.validate();
    std::size_t n = problem.x.size();

    auto energy_of = [&](const CurvePolyline& c) {
        return loop_energy_liouville(c, problem.energy_levels, problem.energy_angular,
                                     problem.energy_budget)
            .value;
    };

    auto run_sweeps = [&](CurvePolyline start) {
        WeldMinimizeResult res;
        res.curve = std::move(start);
        for (std::size_t sweep = 0; sweep < problem.max_sweeps; ++sweep) {
            for (std::size_t k = 0; k < n; ++k) {
                StraightenResult st = arc_straighten_step(res.curve, k, problem.arc_budget,
                                                          problem.weld_samples);
                res.curve = st.curve;
                double cres = 0;
                res.welding = align_to_constraints(st.welding, problem.x, problem.y, &cres);
                res.constraint_residuals.push_back(cres);
                if (problem.track_energy) res.energy_trace.push_back(energy_of(res.curve));
            }
            res.sweeps = sweep + 1;
            res.fits = circular_fit_report(res.curve);
            double worst = 0;
            for (const auto& f : res.fits) worst = std::max(worst, f.residual);
            if (worst < problem.tol) {
                res.converged = true;
                break;
            }
        }
        return res;
    };

    auto worst_joint = [](const WeldMinimizeResult& r) {
        double w = 0;
        for (const auto& f : r.fits) w = std::max(w, std::abs(f.joint_angle - kPi));
        return w;
    };

    // The descent transports joint angles invariantly, so corners injected by
    // the early (far from circular) sweeps persist. Restarting from a clean
    // C1 biarc re-fit of the converged configuration removes them; each
    // restart begins closer to the minimizer and injects less.
    WeldMinimizeResult best = run_sweeps(problem.initial);
    for (int round = 0; round < 3; ++round) {
        if (!best.converged || worst_joint(best) < 0.025) break;
        std::vector<double> phi(n), rad(n), tau(n);
        const CurvePolyline& c = best.curve;
        std::size_t m = c.points.size();
        for (std::size_t k = 0; k < n; ++k) {
            cplx p = c.points[c.marks[k]].z;
            phi[k] = std::arg(p);
            rad[k] = std::abs(p);
            cplx din = p - c.points[(c.marks[k] + m - 3) % m].z;
            cplx dout = c.points[(c.marks[k] + 3) % m].z - p;
            tau[k] = std::arg(din / std::abs(din) + dout / std::abs(dout));
        }
        CurvePolyline reseeded;
        try {
            reseeded = constrained_biarc_search(problem.x, problem.y, phi, rad, tau,
                                                problem.weld_samples, 2e-3, 20);
        } catch (const std::exception&) {
            break;  // keep the best run so far
        }
        WeldMinimizeResult next = run_sweeps(reseeded);
        if (!next.converged) break;
        if (worst_joint(next) < worst_joint(best))
            best = std::move(next);
        else
            break;
    }
    return best;
}

namespace {

CurvePolyline biarc_through(const std::vector<cplx>& ctrl,
                            const std::vector<double>& tangents, std::size_t per_arc) {
    // C1 piecewise-circular interpolant: every side is a biarc matching the
    // prescribed endpoint tangents. The straightening flow transports joint
    // angles invariantly, so the seed curve must already have flat joints,
    // and circular sides keep the early sweeps in the regime the discrete
    // step handles best.
    std::size_t n = ctrl.size();
    CurvePolyline out;
    out.closed = true;
    auto push_arc = [&](cplx from, cplx to, double turn, std::size_t m) {
        // circular arc from `from` to `to` whose tangent rotates by `turn`
        for (std::size_t i = 0; i < m; ++i) {
            double t = static_cast<double>(i) / m;
            cplx chord = to - from;
            if (std::abs(turn) < 1e-12) {
                out.points.push_back(SpherePoint(from + t * chord));
                continue;
            }
            // point at parameter t on the arc subtending angle `turn`
            double half = 0.5 * turn;
            cplx dir = chord / std::abs(chord);
            double radius = std::abs(chord) / (2.0 * std::sin(half));
            cplx center = from + radius * dir * std::polar(1.0, kPi / 2.0 - half);
            double a0 = std::arg(from - center);
            out.points.push_back(
                SpherePoint(center + std::abs(radius) * std::polar(1.0, a0 + t * turn)));
        }
    };
    for (std::size_t k = 0; k < n; ++k) {
        cplx p0 = ctrl[k], p1 = ctrl[(k + 1) % n];
        cplx chord = p1 - p0;
        double base = std::arg(chord);
        double u = angle_diff(tangents[k], base);            // start tangent vs chord
        double v = angle_diff(tangents[(k + 1) % n], base);  // end tangent vs chord
        double w = 0.5 * (u + v);                            // joint tangent vs chord
        // chord lengths of the two sub-arcs: L1 e^{i(u+w)/2} + L2 e^{i(w+v)/2} = |chord|
        double a1 = 0.5 * (u + w), a2 = 0.5 * (w + v);
        double det = std::cos(a1) * std::sin(a2) - std::sin(a1) * std::cos(a2);
        double L1, L2;
        if (std::abs(det) < 1e-9) {
            L1 = L2 = 0.5 * std::abs(chord) / std::max(std::cos(a1), 0.1);
        } else {
            L1 = std::abs(chord) * std::sin(a2) / det;
            L2 = -std::abs(chord) * std::sin(a1) / det;
        }
        if (!(L1 > 1e-9) || !(L2 > 1e-9))
            throw numeric_error("biarc: tangent configuration has no forward biarc");
        cplx joint = p0 + L1 * std::polar(1.0, base + a1);
        out.marks.push_back(out.points.size());
        push_arc(p0, joint, w - u, per_arc / 2);
        push_arc(joint, p1, v - w, per_arc - per_arc / 2);
    }
    return out;
}

CurvePolyline marked_circle(const std::vector<double>& angles, std::size_t per_arc) {
    CurvePolyline out;
    out.closed = true;
    std::size_t n = angles.size();
    for (std::size_t k = 0; k < n; ++k) {
        double a0 = angles[k];
        double span = wrap_angle(angles[(k + 1) % n] - angles[k]);
        out.marks.push_back(out.points.size());
        for (std::size_t i = 0; i < per_arc; ++i)
            out.points.emplace_back(std::polar(1.0, a0 + span * i / per_arc));
    }
    return out;
}

}  // namespace

// Damped Gauss-Newton over biarc control points r_k e^{i phi_k} and endpoint
// tangent directions tau_k, seeded by the caller: residuals are the
// constraint misfits of the forward welding after aligning the first three
// breakpoints. Updates the seed in place and returns the curve.
CurvePolyline constrained_biarc_search(const std::vector<double>& x,
                                       const std::vector<double>& y,
                                       std::vector<double>& phi,
                                       std::vector<double>& rad,
                                       std::vector<double>& tau,
                                       std::size_t weld_samples, double target,
                                       std::size_t max_iter) {
    std::size_t n = x.size();

    auto residuals = [&](const std::vector<double>& ph, const std::vector<double>& rd,
                         const std::vector<double>& tg,
                         std::vector<double>& out) -> bool {
        std::vector<cplx> ctrl(n);
        for (std::size_t k = 0; k < n; ++k) ctrl[k] = std::polar(rd[k], ph[k]);
        CurvePolyline cand;
        try {
            cand = biarc_through(ctrl, tg, 44);
        } catch (const std::exception&) {
            return false;
        }
        if (!is_simple(cand)) return false;
        WeldingSamples w;
        try {
            w = welding_from_curve(cand, weld_samples);
        } catch (const std::exception&) {
            return false;
        }
        MobiusReal alpha, beta;
        try {
            alpha = mobius_real_from_angles(w.break_x[0], w.break_x[1], w.break_x[2],
                                            x[0], x[1], x[2]);
            beta = mobius_real_from_angles(w.break_y[0], w.break_y[1], w.break_y[2],
                                           y[0], y[1], y[2]);
        } catch (const std::exception&) {
            return false;
        }
        out.clear();
        for (std::size_t k = 3; k < n; ++k) {
            out.push_back(angle_diff(alpha.apply_angle(w.break_x[k]), x[k]));
            out.push_back(angle_diff(beta.apply_angle(w.break_y[k]), y[k]));
        }
        return true;
    };

    std::vector<double> res;
    if (!residuals(phi, rad, tau, res))
        throw numeric_error("initial_constrained_curve: seed curve is not usable");
    auto norm_inf = [](const std::vector<double>& v) {
        double m = 0;
        for (double t : v) m = std::max(m, std::abs(t));
        return m;
    };

    double lambda = 1e-2;
    for (std::size_t it = 0; it < max_iter && norm_inf(res) > target; ++it) {
        std::size_t m = res.size(), p = 3 * n;
        // numerical Jacobian
        std::vector<std::vector<double>> J(m, std::vector<double>(p, 0.0));
        const double h = 1e-4;
        for (std::size_t c = 0; c < p; ++c) {
            std::vector<double> ph = phi, rd = rad, tg = tau, pert;
            if (c < n)
                ph[c] += h;
            else if (c < 2 * n)
                rd[c - n] += h;
            else
                tg[c - 2 * n] += h;
            if (!residuals(ph, rd, tg, pert) || pert.size() != m) continue;
            for (std::size_t r = 0; r < m; ++r) J[r][c] = (pert[r] - res[r]) / h;
        }
        // solve (J^T J + lambda I) d = -J^T res  (p x p, tiny)
        std::vector<std::vector<double>> A(p, std::vector<double>(p, 0.0));
        std::vector<double> g(p, 0.0);
        for (std::size_t i = 0; i < p; ++i) {
            for (std::size_t j = 0; j < p; ++j)
                for (std::size_t r = 0; r < m; ++r) A[i][j] += J[r][i] * J[r][j];
            for (std::size_t r = 0; r < m; ++r) g[i] += J[r][i] * res[r];
        }
        bool improved = false;
        for (int attempt = 0; attempt < 6 && !improved; ++attempt) {
            std::vector<std::vector<double>> M = A;
            for (std::size_t i = 0; i < p; ++i) M[i][i] += lambda * (A[i][i] + 1e-8);
            std::vector<double> d(p);
            std::vector<double> rhs(p);
            for (std::size_t i = 0; i < p; ++i) rhs[i] = -g[i];
            bool ok = true;
            for (std::size_t c2 = 0; c2 < p && ok; ++c2) {
                std::size_t best = c2;
                for (std::size_t r2 = c2 + 1; r2 < p; ++r2)
                    if (std::abs(M[r2][c2]) > std::abs(M[best][c2])) best = r2;
                if (std::abs(M[best][c2]) < 1e-14) {
                    ok = false;
                    break;
                }
                std::swap(M[c2], M[best]);
                std::swap(rhs[c2], rhs[best]);
                for (std::size_t r2 = c2 + 1; r2 < p; ++r2) {
                    double f = M[r2][c2] / M[c2][c2];
                    for (std::size_t j2 = c2; j2 < p; ++j2) M[r2][j2] -= f * M[c2][j2];
                    rhs[r2] -= f * rhs[c2];
                }
            }
            if (!ok) {
                lambda *= 10;
                continue;
            }
            for (std::size_t i2 = p; i2-- > 0;) {
                double acc = rhs[i2];
                for (std::size_t j2 = i2 + 1; j2 < p; ++j2) acc -= M[i2][j2] * d[j2];
                d[i2] = acc / M[i2][i2];
            }
            double dmax = 0;
            for (double v : d) dmax = std::max(dmax, std::abs(v));
            if (dmax > 0.35)
                for (double& v : d) v *= 0.35 / dmax;
            std::vector<double> ph = phi, rd = rad, tg = tau, trial;
            for (std::size_t i2 = 0; i2 < n; ++i2) {
                ph[i2] += d[i2];
                rd[i2] = std::clamp(rd[i2] + d[n + i2], 0.35, 3.0);
                tg[i2] += d[2 * n + i2];
            }
            if (residuals(ph, rd, tg, trial) && norm_inf(trial) < norm_inf(res)) {
                phi = ph;
                rad = rd;
                tau = tg;
                res = trial;
                lambda = std::max(lambda / 3.0, 1e-7);
                improved = true;
            } else {
                lambda *= 10;
            }
        }
        if (!improved) break;
    }
    if (norm_inf(res) > 1e-2)
        throw numeric_error(
            "initial_constrained_curve: construction failed (constraint residual " +
            std::to_string(norm_inf(res)) + ")");

    std::vector<cplx> ctrl(n);
    for (std::size_t k = 0; k < n; ++k) ctrl[k] = std::polar(rad[k], phi[k]);
    // the search runs on a light sampling; the returned representative is
    // dense so downstream steps see the seed's smoothness at the marks
    return biarc_through(ctrl, tau, 130);
}

CurvePolyline initial_constrained_curve(const std::vector<double>& x,
                                        const std::vector<double>& y,
                                        std::size_t weld_samples, double target,
                                        std::size_t max_iter) {
    std::size_t n = x.size();
    if (n < 3 || y.size() != n)
        throw validation_error("initial_constrained_curve: need n >= 3 pairs");

    // Moebius-compatible constraints are met exactly by a marked circle.
    try {
        MobiusReal rho = mobius_real_from_angles(x[0], x[1], x[2], y[0], y[1], y[2]);
        double worst = 0;
        for (std::size_t k = 3; k < n; ++k)
            worst = std::max(worst, angle_dist(rho.apply_angle(x[k]), y[k]));
        if (worst < 1e-9) return marked_circle(x, 60);
    } catch (const std::exception&) {
        // fall through to the search
    }

    std::vector<double> phi(n), rad(n, 1.0), tau(n);
    for (std::size_t k = 0; k < n; ++k)
        phi[k] = wrap_angle(x[k] + 0.5 * angle_diff(y[k], x[k]));
    {
        bool mono = true;
        for (std::size_t k = 0; k < n; ++k)
            if (!(wrap_angle(phi[(k + 1) % n] - phi[k]) > 1e-6)) mono = false;
        if (!mono)
            for (std::size_t k = 0; k < n; ++k) phi[k] = x[k];
    }
    for (std::size_t k = 0; k < n; ++k) tau[k] = phi[k] + kPi / 2.0;
    return constrained_biarc_search(x, y, phi, rad, tau, weld_samples, target, max_iter);
}

}  // namespace loewner
