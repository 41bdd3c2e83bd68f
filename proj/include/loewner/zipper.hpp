#pragma once

#include <vector>

#include "loewner/driving.hpp"
#include "loewner/maps.hpp"

namespace loewner::detail {

// State of one unzipping run: samples of a curve in the closed upper
// half-plane are absorbed into R one at a time by geodesic up-steps. Sample 0
// sits on R; each later sample k is absorbed by step k. When step k starts,
// the previous tip (sample k-1) splits into its two boundary footprints.
struct ZipperRun {
    std::vector<ElementaryMap> steps;  // geodesic up-steps, in order
    DrivingFunction driving;           // capacity grid + driving values
    // foot_left/right[j]: final boundary images of the two sides of sample j,
    // for j = 0 .. M-2. The last sample maps to driving.values.back().
    std::vector<double> foot_left, foot_right;
    std::vector<SpherePoint> tracked;  // final images of the extra points
};

// points[0] must be (numerically) real; all later points strictly in H.
// Throws numeric_error when the evolving tip leaves the half-plane.
ZipperRun unzip(const std::vector<cplx>& points, std::vector<SpherePoint> tracked = {});

}  // namespace loewner::detail
