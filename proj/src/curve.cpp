#include "loewner/curve.hpp"

#include <algorithm>
#include <cmath>

namespace loewner {

std::vector<SpherePoint> CurvePolyline::arc_between_marks(std::size_t k) const {
    if (marks.size() < 2) throw validation_error("curve: arc requested without marks");
    std::size_t n = points.size();
    std::size_t from = marks[k % marks.size()];
    std::size_t to = marks[(k + 1) % marks.size()];
    std::vector<SpherePoint> out;
    for (std::size_t i = from;; i = (i + 1) % n) {
        out.push_back(points[i]);
        if (i == to) break;
    }
    return out;
}

std::vector<SpherePoint> CurvePolyline::complement_of_arc(std::size_t k) const {
    std::size_t n = points.size();
    std::size_t from = marks[(k + 1) % marks.size()];
    std::size_t to = marks[k % marks.size()];
    std::vector<SpherePoint> out;
    for (std::size_t i = from;; i = (i + 1) % n) {
        out.push_back(points[i]);
        if (i == to) break;
    }
    return out;
}

void CurvePolyline::validate(const char* who) const {
    if (points.size() < 2) throw validation_error(std::string(who) + ": needs at least 2 points");
    std::size_t n = points.size();
    std::size_t segs = closed ? n : n - 1;
    for (std::size_t i = 0; i < segs; ++i) {
        if (chordal_dist(points[i], points[(i + 1) % n]) < 1e-15)
            throw validation_error(std::string(who) + ": consecutive points coincide at index " +
                                   std::to_string(i));
    }
    for (std::size_t m : marks)
        if (m >= n)
            throw validation_error(std::string(who) + ": mark index out of range");
}

CurvePolyline apply_mobius(const MobiusComplex& m, const CurvePolyline& curve) {
    CurvePolyline out = curve;
    for (auto& p : out.points) p = m.apply(p);
    return out;
}

namespace {

bool segments_cross(cplx a, cplx b, cplx c, cplx d) {
    auto orient = [](cplx p, cplx q, cplx r) {
        double v = (q.real() - p.real()) * (r.imag() - p.imag()) -
                   (q.imag() - p.imag()) * (r.real() - p.real());
        double s = std::abs(q - p) * std::abs(r - p);
        if (std::abs(v) < 1e-15 * (s + 1e-300)) return 0;
        return v > 0 ? 1 : -1;
    };
    int o1 = orient(a, b, c), o2 = orient(a, b, d);
    int o3 = orient(c, d, a), o4 = orient(c, d, b);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

}  // namespace

bool is_simple(const CurvePolyline& curve, std::size_t* seg_a, std::size_t* seg_b) {
    std::size_t n = curve.points.size();
    std::size_t segs = curve.closed ? n : n - 1;
    for (std::size_t i = 0; i < segs; ++i) {
        if (!curve.points[i].finite() || !curve.points[(i + 1) % n].finite())
            throw validation_error("is_simple: curve through infinity; renormalize first");
    }
    for (std::size_t i = 0; i + 1 < segs; ++i) {
        cplx a = curve.points[i].z, b = curve.points[(i + 1) % n].z;
        for (std::size_t j = i + 1; j < segs; ++j) {
            bool adjacent = (j == i + 1) || (curve.closed && i == 0 && j == segs - 1);
            if (adjacent) continue;
            cplx c = curve.points[j].z, d = curve.points[(j + 1) % n].z;
            // cheap bounding-box reject
            if (std::min(a.real(), b.real()) > std::max(c.real(), d.real()) ||
                std::min(c.real(), d.real()) > std::max(a.real(), b.real()) ||
                std::min(a.imag(), b.imag()) > std::max(c.imag(), d.imag()) ||
                std::min(c.imag(), d.imag()) > std::max(a.imag(), b.imag()))
                continue;
            if (segments_cross(a, b, c, d)) {
                if (seg_a) *seg_a = i;
                if (seg_b) *seg_b = j;
                return false;
            }
        }
    }
    return true;
}

double chordal_length(const CurvePolyline& curve) {
    double s = 0;
    std::size_t n = curve.points.size();
    std::size_t segs = curve.closed ? n : n - 1;
    for (std::size_t i = 0; i < segs; ++i)
        s += chordal_dist(curve.points[i], curve.points[(i + 1) % n]);
    return s;
}

bool is_counterclockwise(const CurvePolyline& curve) {
    double area2 = 0;
    std::size_t n = curve.points.size();
    for (std::size_t i = 0; i < n; ++i) {
        cplx p = curve.points[i].z, q = curve.points[(i + 1) % n].z;
        area2 += p.real() * q.imag() - q.real() * p.imag();
    }
    return area2 > 0;
}

void reverse_orientation(CurvePolyline& curve) {
    std::size_t n = curve.points.size();
    std::reverse(curve.points.begin(), curve.points.end());
    for (auto& m : curve.marks) m = (n - 1 - m);
    std::reverse(curve.marks.begin(), curve.marks.end());
    if (!curve.marks.empty()) {
        // keep the original first mark first (cyclic rotation of the list)
        std::rotate(curve.marks.begin(), curve.marks.end() - 1, curve.marks.end());
    }
}

std::vector<SpherePoint> resample_polyline(const std::vector<SpherePoint>& pts,
                                           std::size_t n, double cluster) {
    if (pts.size() < 2 || n < 2) throw validation_error("resample: need >= 2 points");
    std::vector<double> cum(pts.size(), 0.0);
    for (std::size_t i = 1; i < pts.size(); ++i)
        cum[i] = cum[i - 1] + chordal_dist(pts[i - 1], pts[i]);
    double total = cum.back();
    std::vector<SpherePoint> out;
    out.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        double u = static_cast<double>(j) / (n - 1);
        double s;
        if (cluster > 0) {
            // tanh grading: derivative smallest at the ends (endpoint clustering)
            s = 0.5 * (1.0 + std::tanh(cluster * (2 * u - 1)) / std::tanh(cluster));
        } else {
            s = u;
        }
        double target = s * total;
        auto it = std::lower_bound(cum.begin(), cum.end(), target);
        std::size_t i = std::min<std::size_t>(std::distance(cum.begin(), it), pts.size() - 1);
        if (i == 0) {
            out.push_back(pts[0]);
            continue;
        }
        double seg = cum[i] - cum[i - 1];
        double w = seg > 0 ? (target - cum[i - 1]) / seg : 0.0;
        if (!pts[i - 1].finite() || !pts[i].finite()) {
            out.push_back(w < 0.5 ? pts[i - 1] : pts[i]);
        } else {
            out.push_back(SpherePoint(pts[i - 1].z * (1.0 - w) + pts[i].z * w));
        }
    }
    out.front() = pts.front();
    out.back() = pts.back();
    return out;
}

std::vector<SpherePoint> downsample_vertices(const std::vector<SpherePoint>& pts,
                                             std::size_t n, double cluster) {
    if (pts.size() < 2 || n < 2) throw validation_error("downsample: need >= 2 points");
    if (n >= pts.size()) return pts;
    std::vector<double> cum(pts.size(), 0.0);
    for (std::size_t i = 1; i < pts.size(); ++i)
        cum[i] = cum[i - 1] + chordal_dist(pts[i - 1], pts[i]);
    double total = cum.back();
    std::vector<SpherePoint> out;
    out.reserve(n);
    std::size_t prev = 0;
    out.push_back(pts[0]);
    for (std::size_t j = 1; j + 1 < n; ++j) {
        double u = static_cast<double>(j) / (n - 1);
        double sfrac =
            cluster > 0
                ? 0.5 * (1.0 + std::tanh(cluster * (2 * u - 1)) / std::tanh(cluster))
                : u;
        double target = sfrac * total;
        auto it = std::lower_bound(cum.begin(), cum.end(), target);
        std::size_t i = std::min<std::size_t>(std::distance(cum.begin(), it), pts.size() - 2);
        if (i > 0 && target - cum[i - 1] < cum[i] - target) --i;
        i = std::max(i, prev + 1);
        std::size_t room = pts.size() - 1 - (n - 1 - j);  // leave space for the rest
        i = std::min(i, room);
        if (i <= prev) continue;
        out.push_back(pts[i]);
        prev = i;
    }
    out.push_back(pts.back());
    return out;
}

CurvePolyline resample_closed_marked(const CurvePolyline& curve, std::size_t budget,
                                     double cluster, std::size_t min_per_arc) {
    if (!curve.closed) throw validation_error("resample_closed_marked: curve must be closed");
    if (curve.marks.size() < 2) {
        std::vector<SpherePoint> ring = curve.points;
        ring.push_back(curve.points.front());
        auto rs = budget + 1 >= ring.size() ? ring : downsample_vertices(ring, budget + 1, 0.0);
        rs.pop_back();
        CurvePolyline out;
        out.points = rs;
        out.closed = true;
        out.marks = curve.marks.empty() ? std::vector<std::size_t>{}
                                        : std::vector<std::size_t>{0};
        return out;
    }
    std::size_t narcs = curve.marks.size();
    std::vector<std::vector<SpherePoint>> arcs(narcs);
    std::vector<double> lens(narcs);
    double total = 0;
    for (std::size_t k = 0; k < narcs; ++k) {
        arcs[k] = curve.arc_between_marks(k);
        CurvePolyline tmp;
        tmp.points = arcs[k];
        lens[k] = chordal_length(tmp);
        total += lens[k];
    }
    CurvePolyline out;
    out.closed = true;
    for (std::size_t k = 0; k < narcs; ++k) {
        std::size_t quota = std::max<std::size_t>(
            min_per_arc, static_cast<std::size_t>(budget * lens[k] / total));
        auto rs = quota + 1 >= arcs[k].size() ? arcs[k]
                                              : downsample_vertices(arcs[k], quota + 1, cluster);
        out.marks.push_back(out.points.size());
        rs.pop_back();  // the arc's last point opens the next arc
        for (auto& p : rs) out.points.push_back(p);
    }
    return out;
}

namespace {

double point_to_segment_chordal(const SpherePoint& p, const SpherePoint& a,
                                const SpherePoint& b) {
    if (!a.finite() || !b.finite())
        return std::min(chordal_dist(p, a), chordal_dist(p, b));
    auto at = [&](double t) {
        return chordal_dist(p, SpherePoint(a.z * (1.0 - t) + b.z * t));
    };
    // coarse scan then golden-section refinement
    double best_t = 0, best = at(0);
    for (int i = 1; i <= 8; ++i) {
        double t = i / 8.0;
        double d = at(t);
        if (d < best) {
            best = d;
            best_t = t;
        }
    }
    double lo = std::max(0.0, best_t - 0.125), hi = std::min(1.0, best_t + 0.125);
    const double gr = 0.6180339887498949;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = at(x1), f2 = at(x2);
    for (int it = 0; it < 40; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = at(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = at(x2);
        }
    }
    return std::min(best, std::min(f1, f2));
}

double directed_hausdorff(const std::vector<SpherePoint>& a,
                          const std::vector<SpherePoint>& b, bool b_closed) {
    double worst = 0;
    std::size_t nb = b.size();
    std::size_t segs = b_closed ? nb : nb - 1;
    for (const auto& p : a) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < segs; ++j) {
            double d = point_to_segment_chordal(p, b[j], b[(j + 1) % nb]);
            if (d < best) best = d;
            if (best == 0) break;
        }
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

double hausdorff_dist(const std::vector<SpherePoint>& a,
                      const std::vector<SpherePoint>& b, bool a_closed,
                      bool b_closed) {
    if (a.empty() || b.empty()) throw validation_error("hausdorff: empty polyline");
    return std::max(directed_hausdorff(a, b, b_closed),
                    directed_hausdorff(b, a, a_closed));
}

CurvePolyline make_circle(std::size_t n, cplx center, double radius, double phase) {
    CurvePolyline c;
    c.closed = true;
    c.points.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        double t = phase + kTwoPi * j / n;
        c.points.emplace_back(center + std::polar(radius, t));
    }
    return c;
}

CurvePolyline make_perturbed_circle(std::size_t n, double coef) {
    CurvePolyline c;
    c.closed = true;
    c.points.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        cplx z = std::polar(1.0, kTwoPi * j / n);
        c.points.emplace_back(z + coef * z * z);
    }
    return c;
}

}  // namespace loewner
