#include "loewner/weld.hpp"

#include <algorithm>
#include <cmath>

namespace loewner {

namespace {

double lerp_wrapped(const std::vector<double>& xs, const std::vector<double>& ys,
                    double x0, double x) {
    // xs increasing from xs[0], covering [xs[0], xs[0] + 2*pi); ys unwrapped
    double span = kTwoPi;
    double t = x0 + std::fmod(x - x0, span);
    if (t < x0) t += span;
    auto it = std::upper_bound(xs.begin(), xs.end(), t);
    std::size_t i = std::distance(xs.begin(), it);
    double xl, xr, yl, yr;
    if (i == 0) {  // before the first node: wrap the last one back
        xl = xs.back() - span;
        yl = ys.back() - span;
        xr = xs.front();
        yr = ys.front();
    } else if (i == xs.size()) {
        xl = xs.back();
        yl = ys.back();
        xr = xs.front() + span;
        yr = ys.front() + span;
    } else {
        xl = xs[i - 1];
        yl = ys[i - 1];
        xr = xs[i];
        yr = ys[i];
    }
    double w = (t - xl) / std::max(xr - xl, 1e-300);
    return yl + w * (yr - yl);
}

}  // namespace

double WeldingSamples::eval(double angle) const {
    return wrap_angle(lerp_wrapped(theta, image, theta[0], angle));
}

double WeldingSamples::eval_inverse(double angle) const {
    return wrap_angle(lerp_wrapped(image, theta, image[0], angle));
}

void WeldingSamples::validate(const char* who) const {
    if (theta.size() != image.size() || theta.size() < 8)
        throw validation_error(std::string(who) + ": welding needs >= 8 aligned samples");
    for (std::size_t i = 1; i < theta.size(); ++i) {
        if (!(theta[i] > theta[i - 1]))
            throw validation_error(std::string(who) +
                                   ": theta not cyclically increasing at index " +
                                   std::to_string(i));
        if (!(image[i] > image[i - 1]))
            throw validation_error(std::string(who) +
                                   ": image not cyclically increasing at index " +
                                   std::to_string(i));
    }
    if (theta.back() - theta.front() >= kTwoPi)
        throw validation_error(std::string(who) + ": theta wraps more than once");
    if (image.back() - image.front() >= kTwoPi)
        throw validation_error(std::string(who) + ": image wraps more than once");
    if (break_x.size() != break_y.size())
        throw validation_error(std::string(who) + ": breakpoint lists must pair up");
}

WeldingSamples welding_from_curve(const CurvePolyline& curve, std::size_t n_samples) {
    if (!curve.closed) throw validation_error("welding_from_curve: curve must be closed");
    CurvePolyline work = curve.points.size() > n_samples + n_samples / 4
                             ? resample_closed_marked(curve, n_samples)
                             : curve;
    DiskCharts dc = disk_charts_from_curve(work);
    std::size_t n = work.points.size();

    // boundary angles run counterclockwise; walk the samples in that
    // direction whichever way the input curve was ordered
    bool ccw = is_counterclockwise(work);

    // rotate so theta increases from index 0
    std::size_t start = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (dc.theta[i] < dc.theta[start]) start = i;

    WeldingSamples w;
    w.theta.reserve(n);
    w.image.reserve(n);
    double prev_img = -1e300;
    double img_offset = 0.0;
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = ccw ? (start + i) % n : (start + n - i) % n;
    for (std::size_t i : order) {
        double th = dc.theta[i];
        double ps = dc.psi[i] + img_offset;
        while (ps < prev_img) {
            ps += kTwoPi;
            img_offset += kTwoPi;
        }
        w.theta.push_back(th);
        w.image.push_back(ps);
        prev_img = ps;
    }
    if (w.image.back() - w.image.front() >= kTwoPi)
        throw numeric_error("welding_from_curve: image angles wrap more than once "
                            "(boundary correspondence not monotone)");

    // canonical representative: post-compose so that three fixed domain
    // angles map to themselves
    double v1 = w.eval(0.0), v2 = w.eval(2.0 * kPi / 3.0), v3 = w.eval(4.0 * kPi / 3.0);
    MobiusReal pin = mobius_real_from_angles(v1, v2, v3, 0.0, 2.0 * kPi / 3.0,
                                             4.0 * kPi / 3.0);
    double carry = 0.0;
    prev_img = -1e300;
    for (std::size_t i = 0; i < n; ++i) {
        double ps = pin.apply_angle(wrap_angle(w.image[i])) + carry;
        while (ps < prev_img) {
            ps += kTwoPi;
            carry += kTwoPi;
        }
        w.image[i] = ps;
        prev_img = ps;
    }
    // start the unwrapped image inside [0, 2*pi)
    if (!w.image.empty()) {
        double shift = kTwoPi * std::floor(w.image[0] / kTwoPi);
        for (auto& v : w.image) v -= shift;
    }

    // breakpoints from the curve marks
    for (std::size_t m : work.marks) {
        auto pos = std::find(order.begin(), order.end(), m);
        std::size_t idx = std::distance(order.begin(), pos);
        w.break_index.push_back(idx);
        w.break_x.push_back(w.theta[idx]);
        w.break_y.push_back(wrap_angle(w.image[idx]));
    }
    w.validate("welding_from_curve");
    return w;
}

namespace {

MobiusReal mobius_through_samples(const std::vector<double>& th,
                                  const std::vector<double>& ps, std::size_t i1,
                                  std::size_t i2, std::size_t i3) {
    return mobius_real_from_angles(th[i1], th[i2], th[i3], wrap_angle(ps[i1]),
                                   wrap_angle(ps[i2]), wrap_angle(ps[i3]));
}

double sup_angle_error(const MobiusReal& m, const std::vector<double>& th,
                       const std::vector<double>& ps) {
    double worst = 0;
    for (std::size_t i = 0; i < th.size(); ++i)
        worst = std::max(worst, angle_dist(m.apply_angle(th[i]), wrap_angle(ps[i])));
    return worst;
}

}  // namespace

std::vector<MobiusPieceFit> fit_mobius_pieces(const WeldingSamples& w) {
    w.validate("fit_mobius_pieces");
    if (w.break_index.size() < 1)
        throw validation_error("fit_mobius_pieces: breakpoints required");
    std::size_t n = w.size();
    std::size_t npieces = w.break_index.size();
    std::vector<MobiusPieceFit> fits;
    for (std::size_t k = 0; k < npieces; ++k) {
        std::size_t from = w.break_index[k];
        std::size_t to = w.break_index[(k + 1) % npieces];
        std::vector<double> th, ps;
        std::size_t i = from;
        bool wrapped = false;
        do {
            th.push_back(w.theta[i] + (wrapped ? kTwoPi : 0.0));
            ps.push_back(w.image[i] + (wrapped ? kTwoPi : 0.0));
            if ((i + 1) % n == 0) wrapped = true;
            i = (i + 1) % n;
        } while (i != to);
        th.push_back(w.theta[to] + (wrapped || to < from || npieces == 1 ? kTwoPi : 0.0));
        ps.push_back(w.image[to] + (wrapped || to < from || npieces == 1 ? kTwoPi : 0.0));
        if (th.size() < 5)
            throw validation_error("fit_mobius_pieces: a piece has fewer than 5 samples");

        // anchor three quantile samples; the residual at every other sample is
        // the cross-ratio mismatch of the quadruple (anchors + that sample)
        std::size_t m = th.size();
        MobiusPieceFit best;
        best.residual = std::numeric_limits<double>::infinity();
        const std::size_t anchor_sets[2][3] = {{0, m / 2, m - 1}, {m / 6, m / 2, m - 1 - m / 6}};
        for (const auto& A : anchor_sets) {
            if (A[0] == A[1] || A[1] == A[2]) continue;
            try {
                MobiusReal cand = mobius_through_samples(th, ps, A[0], A[1], A[2]);
                double r = sup_angle_error(cand, th, ps);
                if (r < best.residual) best = {cand, r};
            } catch (const std::exception&) {
                // degenerate anchors; try the next set
            }
        }
        if (!std::isfinite(best.residual))
            throw numeric_error("fit_mobius_pieces: could not fit a piece");

        // small Gauss-Seidel refinement over the three anchor images
        std::size_t A0 = 0, A1 = m / 2, A2 = m - 1;
        double y0 = wrap_angle(ps[A0]), y1 = wrap_angle(ps[A1]), y2 = wrap_angle(ps[A2]);
        double step = best.residual;
        for (int it = 0; it < 24 && step > 1e-14; ++it) {
            bool improved = false;
            for (int which = 0; which < 3; ++which) {
                for (double sgn : {+1.0, -1.0}) {
                    double ty0 = y0 + (which == 0 ? sgn * step : 0.0);
                    double ty1 = y1 + (which == 1 ? sgn * step : 0.0);
                    double ty2 = y2 + (which == 2 ? sgn * step : 0.0);
                    try {
                        MobiusReal cand = mobius_real_from_angles(
                            th[A0], th[A1], th[A2], wrap_angle(ty0), wrap_angle(ty1),
                            wrap_angle(ty2));
                        double r = sup_angle_error(cand, th, ps);
                        if (r < best.residual) {
                            best = {cand, r};
                            y0 = ty0;
                            y1 = ty1;
                            y2 = ty2;
                            improved = true;
                        }
                    } catch (const std::exception&) {
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
        fits.push_back(best);
    }
    return fits;
}

std::vector<double> c1_break_report(const WeldingSamples& w,
                                    const std::vector<MobiusReal>& pieces) {
    if (pieces.size() != w.break_x.size())
        throw validation_error("c1_break_report: piece count must match breakpoints");
    std::size_t n = pieces.size();
    std::vector<double> jumps(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        // piece k-1 ends at breakpoint k, piece k starts there
        const MobiusReal& left = pieces[(k + n - 1) % n];
        const MobiusReal& right = pieces[k];
        double x = w.break_x[k];
        double dl = left.angle_deriv(x), dr = right.angle_deriv(x);
        if (!(dl > 0) || !(dr > 0))
            throw numeric_error("c1_break_report: non-positive derivative at a breakpoint");
        jumps[k] = std::abs(std::log(dr / dl));
    }
    return jumps;
}

WeldingSamples transform_welding(const WeldingSamples& w, const MobiusReal& alpha,
                                 const MobiusReal& beta) {
    // h -> beta . h . alpha^-1: sample at alpha(theta_i) -> beta(image_i)
    std::size_t n = w.size();
    std::vector<std::pair<double, double>> pairs(n);
    for (std::size_t i = 0; i < n; ++i) {
        pairs[i] = {alpha.apply_angle(w.theta[i]),
                    beta.apply_angle(wrap_angle(w.image[i]))};
    }
    std::sort(pairs.begin(), pairs.end());
    WeldingSamples out;
    double prev = -1e300, carry = 0.0;
    for (auto& [th, ps] : pairs) {
        double v = ps + carry;
        while (v < prev) {
            v += kTwoPi;
            carry += kTwoPi;
        }
        out.theta.push_back(th);
        out.image.push_back(v);
        prev = v;
    }
    for (std::size_t k = 0; k < w.break_x.size(); ++k) {
        out.break_x.push_back(alpha.apply_angle(w.break_x[k]));
        out.break_y.push_back(beta.apply_angle(w.break_y[k]));
        // nearest sample index in the new ordering
        std::size_t bi = 0;
        double bd = 1e300;
        for (std::size_t i = 0; i < n; ++i) {
            double d = angle_dist(out.theta[i], out.break_x.back());
            if (d < bd) {
                bd = d;
                bi = i;
            }
        }
        out.break_index.push_back(bi);
    }
    out.validate("transform_welding");
    return out;
}

WeldingAlignment align_weldings(const WeldingSamples& ref, const WeldingSamples& w,
                                int effort) {
    ref.validate("align_weldings(ref)");
    w.validate("align_weldings(w)");

    // alpha is parametrized by the images of three fixed reference angles;
    // beta is then forced by three-point matching through both maps
    const double a0 = 0.0, a1 = 2.0 * kPi / 3.0, a2 = 4.0 * kPi / 3.0;

    auto assemble = [&](double u0, double u1, double u2,
                        WeldingAlignment& out) -> double {
        if (orientation_triple(u0, u1, u2) != 1) return 1e300;
        MobiusReal alpha;
        try {
            alpha = mobius_real_from_angles(u0, u1, u2, a0, a1, a2);
        } catch (const std::exception&) {
            return 1e300;
        }
        // beta must send h(alpha^-1(a_i)) = h(u_i) to ref(a_i)
        double h0 = w.eval(u0), h1 = w.eval(u1), h2 = w.eval(u2);
        double r0 = ref.eval(a0), r1 = ref.eval(a1), r2 = ref.eval(a2);
        MobiusReal beta;
        try {
            beta = mobius_real_from_angles(h0, h1, h2, r0, r1, r2);
        } catch (const std::exception&) {
            return 1e300;
        }
        double worst = 0;
        std::size_t stride = std::max<std::size_t>(1, ref.size() / 96);
        for (std::size_t i = 0; i < ref.size(); i += stride) {
            double th = ref.theta[i];
            double expect = wrap_angle(ref.image[i]);
            double got = beta.apply_angle(w.eval(alpha.inverse().apply_angle(th)));
            worst = std::max(worst, angle_dist(got, expect));
        }
        out.alpha = alpha;
        out.beta = beta;
        out.sup_error = worst;
        return worst;
    };

    WeldingAlignment best;
    best.sup_error = 1e300;
    // seeds: rigid rotations of the identity correspondence
    int nseed = 8 * std::max(1, effort);
    for (int s = 0; s < nseed; ++s) {
        double rot = kTwoPi * s / nseed;
        WeldingAlignment cand;
        if (assemble(wrap_angle(a0 + rot), wrap_angle(a1 + rot), wrap_angle(a2 + rot),
                     cand) < best.sup_error)
            best = cand;
    }
    // coordinate refinement on (u0, u1, u2)
    double u0 = best.alpha.inverse().apply_angle(a0);
    double u1 = best.alpha.inverse().apply_angle(a1);
    double u2 = best.alpha.inverse().apply_angle(a2);
    double step = 0.3;
    for (int it = 0; it < 60 && step > 1e-9; ++it) {
        bool improved = false;
        for (int which = 0; which < 3; ++which) {
            for (double sgn : {+1.0, -1.0}) {
                double t0 = u0 + (which == 0 ? sgn * step : 0.0);
                double t1 = u1 + (which == 1 ? sgn * step : 0.0);
                double t2 = u2 + (which == 2 ? sgn * step : 0.0);
                WeldingAlignment cand;
                if (assemble(wrap_angle(t0), wrap_angle(t1), wrap_angle(t2), cand) <
                    best.sup_error) {
                    best = cand;
                    u0 = t0;
                    u1 = t1;
                    u2 = t2;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return best;
}

}  // namespace loewner
