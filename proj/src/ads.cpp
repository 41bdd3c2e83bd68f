#include "loewner/ads.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace loewner {

Mat2 mat_mul(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
}

double bilinear_22(const Mat2& x, const Mat2& y) {
    // adj(y) = (d, -b; -c, a); -1/2 Tr(x adj(y)) expands to:
    return -0.5 * (x.a * y.d - x.b * y.c - x.c * y.b + x.d * y.a);
}

Mat2 basis_id() { return {1, 0, 0, 1}; }
Mat2 basis_v() { return {0, 1, 1, 0}; }
Mat2 basis_w() { return {1, 0, 0, -1}; }
Mat2 basis_u() { return {0, -1, 1, 0}; }

namespace {

// direction vector of the RP^1 line with circle angle theta
void line_direction(double theta, double out[2]) {
    out[0] = -std::cos(theta / 2.0);
    out[1] = std::sin(theta / 2.0);
}

double direction_angle(double p, double q) {
    // invert (p, q) ~ +-(-cos(theta/2), sin(theta/2))
    if (q < 0 || (q == 0 && p > 0)) {
        p = -p;
        q = -q;
    }
    double half = std::atan2(q, -p);
    return wrap_angle(2.0 * half);
}

void pin_sign(Mat2& m) {
    double* e[4] = {&m.a, &m.b, &m.c, &m.d};
    for (double* p : e) {
        if (std::abs(*p) < 1e-13) continue;
        if (*p < 0)
            for (double* q : e) *q = -*q;
        return;
    }
}

}  // namespace

AdSBoundaryPoint AdSBoundaryPoint::from_angles(double x, double y) {
    AdSBoundaryPoint p;
    p.x = wrap_angle(x);
    p.y = wrap_angle(y);
    double u[2], v[2];
    line_direction(p.x, u);
    line_direction(p.y, v);
    // A = u (J v)^T with J = (0,-1;1,0): kernel = span(v), image = span(u)
    double jv[2] = {-v[1], v[0]};
    p.rep = {u[0] * jv[0], u[0] * jv[1], u[1] * jv[0], u[1] * jv[1]};
    double n = p.rep.frob();
    p.rep.a /= n;
    p.rep.b /= n;
    p.rep.c /= n;
    p.rep.d /= n;
    pin_sign(p.rep);
    return p;
}

AdSBoundaryPoint AdSBoundaryPoint::from_matrix(const Mat2& m) {
    double n = m.frob();
    if (!(n > 0)) throw validation_error("ads point: zero matrix");
    if (std::abs(m.det()) > 1e-10 * n * n)
        throw validation_error("ads point: representative must have rank one");
    // image: the larger column; kernel: v with (Jv) ~ the larger row
    double col1 = std::hypot(m.a, m.c), col2 = std::hypot(m.b, m.d);
    double ux, uy;
    if (col1 >= col2) {
        ux = m.a;
        uy = m.c;
    } else {
        ux = m.b;
        uy = m.d;
    }
    double row1 = std::hypot(m.a, m.b), row2 = std::hypot(m.c, m.d);
    double rx, ry;
    if (row1 >= row2) {
        rx = m.a;
        ry = m.b;
    } else {
        rx = m.c;
        ry = m.d;
    }
    // row ~ (Jv)^T: v = J^{-1} (rx, ry) = (ry, -rx)
    return from_angles(direction_angle(ux, uy), direction_angle(ry, -rx));
}

double plane_boundary_check(const MobiusReal& alpha, double x) {
    double y = alpha.inverse().apply_angle(x);
    AdSBoundaryPoint p = AdSBoundaryPoint::from_angles(x, y);
    return std::abs(bilinear_22(Mat2::from_mobius(alpha), p.rep));
}

AdSBoundaryPoint isometry_act(const MobiusReal& alpha, const MobiusReal& beta,
                              const AdSBoundaryPoint& p) {
    Mat2 m = mat_mul(Mat2::from_mobius(alpha),
                     mat_mul(p.rep, Mat2::from_mobius(beta.inverse())));
    return AdSBoundaryPoint::from_matrix(m);
}

PositivityReport is_positive_curve(const std::vector<AdSBoundaryPoint>& samples,
                                   std::uint64_t seed, std::size_t random_trials) {
    std::size_t n = samples.size();
    if (n < 3) throw validation_error("is_positive_curve: need at least 3 samples");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (angle_dist(samples[i].x, samples[j].x) < 1e-12 ||
                angle_dist(samples[i].y, samples[j].y) < 1e-12)
                throw validation_error(
                    "is_positive_curve: coincident coordinates at samples " +
                    std::to_string(i) + "," + std::to_string(j));
        }

    auto check = [&](std::size_t i, std::size_t j, std::size_t k) {
        int ox = orientation_triple(samples[i].x, samples[j].x, samples[k].x);
        int oy = orientation_triple(samples[i].y, samples[j].y, samples[k].y);
        return ox == oy;
    };

    PositivityReport rep;
    if (n <= 200) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (std::size_t k = j + 1; k < n; ++k)
                    if (!check(i, j, k)) {
                        rep.positive = false;
                        rep.witness[0] = i;
                        rep.witness[1] = j;
                        rep.witness[2] = k;
                        return rep;
                    }
        return rep;
    }
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t t = 0; t < random_trials; ++t) {
        std::size_t i = pick(gen), j = pick(gen), k = pick(gen);
        if (i == j || j == k || i == k) continue;
        if (!check(i, j, k)) {
            std::size_t w[3] = {i, j, k};
            std::sort(w, w + 3);
            rep.positive = false;
            rep.witness[0] = w[0];
            rep.witness[1] = w[1];
            rep.witness[2] = w[2];
            return rep;
        }
    }
    return rep;
}

PleatedPlane pleat_from_welding(const std::vector<MobiusReal>& pieces,
                                const std::vector<AdSBoundaryPoint>& breakpoints) {
    std::size_t n = pieces.size();
    if (n == 0 || breakpoints.size() != n)
        throw validation_error("pleat_from_welding: need one breakpoint per piece");
    // piece k spans the boundary graph between breakpoints k and k+1; its
    // graph must pass through both
    for (std::size_t k = 0; k < n; ++k) {
        const AdSBoundaryPoint& b0 = breakpoints[k];
        const AdSBoundaryPoint& b1 = breakpoints[(k + 1) % n];
        for (const AdSBoundaryPoint* b : {&b0, &b1}) {
            if (angle_dist(pieces[k].apply_angle(b->x), b->y) > 1e-6)
                throw validation_error("pleat_from_welding: piece " + std::to_string(k) +
                                       " does not interpolate its breakpoints");
        }
    }

    PleatedPlane out;
    out.ambient = PleatedPlane::Ambient::ads3;
    out.ads_vertices = breakpoints;
    for (std::size_t k = 0; k < n; ++k) {
        PleatedPlane::Face f;
        f.is_triangle = false;
        f.plane.alpha = pieces[k].inverse();  // boundary of P_[m^-1] is gr(m)
        f.verts[0] = k;
        f.verts[1] = (k + 1) % n;
        out.faces.push_back(f);
    }
    if (n >= 3) {
        for (std::size_t j = 1; j + 1 < n; ++j) {
            PleatedPlane::Face f;
            f.is_triangle = true;
            f.verts[0] = 0;
            f.verts[1] = j;
            f.verts[2] = j + 1;
            // plane through the three vertices: alpha(y_i) = x_i
            f.plane.alpha = mobius_real_from_angles(
                breakpoints[0].y, breakpoints[j].y, breakpoints[j + 1].y,
                breakpoints[0].x, breakpoints[j].x, breakpoints[j + 1].x);
            out.faces.push_back(f);
            out.triangulation.push_back({0, j, j + 1});
        }
        for (std::size_t k = 0; k < n; ++k) out.bending.emplace_back(k, (k + 1) % n);
        for (std::size_t j = 2; j + 1 < n; ++j) out.bending.emplace_back(0, j);
    } else if (n == 2) {
        out.bending.emplace_back(0, 1);
    }
    return out;
}

PleatedPlane pleat_from_circular(const std::vector<CircularArcFace>& arcs) {
    std::size_t n = arcs.size();
    if (n == 0) throw validation_error("pleat_from_circular: no arcs");
    for (std::size_t k = 0; k < n; ++k) {
        const CircularArcFace& cur = arcs[k];
        const CircularArcFace& nxt = arcs[(k + 1) % n];
        if (chordal_dist(cur.to, nxt.from) > 1e-6)
            throw validation_error("pleat_from_circular: arcs do not chain at joint " +
                                   std::to_string(k));
        if (!cur.to.finite()) continue;  // joint at infinity: tangent check skipped
        cplx t_in = cur.circ.tangent_at(cur.to.z);
        cplx t_out = nxt.circ.tangent_at(nxt.from.z);
        // direction of travel: align tangent with the arc's own orientation
        if (cur.from.finite()) {
            cplx travel = cur.to.z - cur.from.z;
            if ((t_in * std::conj(travel)).real() < 0) t_in = -t_in;
        }
        if (nxt.to.finite()) {
            cplx travel = nxt.to.z - nxt.from.z;
            if ((t_out * std::conj(travel)).real() < 0) t_out = -t_out;
        }
        double joint = std::acos(std::clamp(
            -t_in.real() * t_out.real() - t_in.imag() * t_out.imag(), -1.0, 1.0));
        if (std::abs(joint - kPi) > 0.2)
            throw validation_error("pleat_from_circular: joint " + std::to_string(k) +
                                   " bends by " + std::to_string(std::abs(joint - kPi)) +
                                   " rad (not a C1 curve)");
    }

    PleatedPlane out;
    out.ambient = PleatedPlane::Ambient::h3;
    for (std::size_t k = 0; k < n; ++k) out.h3_vertices.push_back(arcs[k].from);

    // collapse arcs lying on one common circline to a single hemisphere
    bool all_same = true;
    for (std::size_t k = 1; k < n; ++k) {
        const Circline& c0 = arcs[0].circ;
        const Circline& ck = arcs[k].circ;
        if (c0.is_line != ck.is_line)
            all_same = false;
        else if (!c0.is_line && (std::abs(c0.center - ck.center) > 1e-9 ||
                                 std::abs(c0.radius - ck.radius) > 1e-9))
            all_same = false;
        else if (c0.is_line && c0.dist(SpherePoint(ck.point)) > 1e-9)
            all_same = false;
    }
    if (all_same) {
        PleatedPlane::Face f;
        f.is_triangle = false;
        f.circ = arcs[0].circ;
        out.faces.push_back(f);
        return out;
    }

    for (std::size_t k = 0; k < n; ++k) {
        PleatedPlane::Face f;
        f.is_triangle = false;
        f.circ = arcs[k].circ;
        f.verts[0] = k;
        f.verts[1] = (k + 1) % n;
        out.faces.push_back(f);
    }
    for (std::size_t j = 1; j + 1 < n; ++j) {
        PleatedPlane::Face f;
        f.is_triangle = true;
        f.verts[0] = 0;
        f.verts[1] = j;
        f.verts[2] = j + 1;
        f.circ = circline_through(arcs[0].from, arcs[j].from, arcs[j + 1].from);
        out.faces.push_back(f);
        out.triangulation.push_back({0, j, j + 1});
    }
    for (std::size_t k = 0; k < n; ++k) out.bending.emplace_back(k, (k + 1) % n);
    for (std::size_t j = 2; j + 1 < n; ++j) out.bending.emplace_back(0, j);
    return out;
}

}  // namespace loewner
