#include "loewner/zipper.hpp"

#include <cmath>

namespace loewner::detail {

ZipperRun unzip(const std::vector<cplx>& points, std::vector<SpherePoint> tracked) {
    if (points.size() < 2) throw validation_error("unzip: need at least 2 points");
    if (std::abs(points[0].imag()) > 1e-9 * (1.0 + std::abs(points[0])))
        throw validation_error("unzip: first point must lie on R");

    ZipperRun run;
    run.tracked = std::move(tracked);
    std::size_t m = points.size();
    run.foot_left.assign(m - 1, 0.0);
    run.foot_right.assign(m - 1, 0.0);

    double W = points[0].real();
    double t = 0.0;
    run.driving.times.push_back(0.0);
    run.driving.values.push_back(W);

    std::vector<cplx> img(points.begin() + 1, points.end());

    double h_seen = 0.0;
    for (std::size_t k = 0; k < img.size(); ++k) {
        cplx zeta = img[k] - W;
        // a sample indistinguishable from the current tip carries no usable
        // capacity increment (its relative capacity is below ~1e-12); record
        // it on the tip and move on
        if (std::abs(zeta) <= 1e-12 * (1.0 + std::abs(W)) + 1e-6 * h_seen) {
            run.foot_left[k] = W;
            run.foot_right[k] = W;
            continue;
        }
        if (!(zeta.imag() > 1e-13 * std::abs(zeta))) {
            // Noise amplification near the tip can push an almost-vertical
            // increment slightly below R; snap those back. A genuinely
            // horizontal or descending increment is a real failure.
            if (std::abs(zeta.real()) <= 1e-6 * std::abs(zeta) &&
                zeta.imag() > -1e-6 * std::abs(zeta) && std::abs(zeta) > 0.0) {
                zeta = cplx(0.0, std::abs(zeta));
            } else {
                throw numeric_error("unzip: tip left the upper half-plane at sample " +
                                    std::to_string(k + 1) +
                                    " (curve non-simple at this resolution?)");
            }
        }
        ElementaryMap step = ElementaryMap::make_geodesic(W, zeta);

        // the previous tip splits into the two scar endpoints
        run.foot_left[k] = step.scar_left();
        run.foot_right[k] = step.scar_right();
        for (std::size_t j = 0; j < k; ++j) {
            run.foot_left[j] = step.apply_real(run.foot_left[j]);
            run.foot_right[j] = step.apply_real(run.foot_right[j]);
        }
        for (std::size_t j = k + 1; j < img.size(); ++j)
            img[j] = step.apply(SpherePoint(img[j])).z;
        for (auto& p : run.tracked) p = step.apply(p);

        W = step.new_driving();
        t += step.cap;
        h_seen = std::max(h_seen, std::abs(zeta));
        run.driving.times.push_back(t);
        run.driving.values.push_back(W);
        run.steps.push_back(step);
    }
    return run;
}

}  // namespace loewner::detail
