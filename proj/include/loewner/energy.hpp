#pragma once

#include <string>

#include "loewner/confmap.hpp"
#include "loewner/curve.hpp"

namespace loewner {

struct EnergyResolution {
    std::size_t curve_samples = 0;
    int radial_levels = 0;
    int angular_samples = 0;
    double epsilon = 0.0;
    double epsilon_second = 0.0;
};

struct EnergyReport {
    double value = 0.0;
    std::string method;  // "rooted-driving" | "liouville"
    EnergyResolution resolution;
    double estimated_error = 0.0;
    bool diverged = false;
};

// Loop energy from the rooted definition: chordal energy of the curve minus a
// short initial piece, in the complement of that piece, extrapolated over two
// cut lengths (epsilon and epsilon/2). epsilon <= 0 picks length/50.
EnergyReport loop_energy_driving(const CurvePolyline& curve, std::size_t root_index,
                                 double epsilon, std::size_t samples = 700);

// The disk-energy identity:
//   (1/pi) int_D |f''/f'|^2 + (1/pi) int_D* |g''/g'|^2 + 4 log |f'(0)/g'(inf)|
// evaluated on a polar grid with geometric radial refinement toward the
// boundary; the exterior integral is pulled back to the disk by w -> 1/w.
EnergyReport liouville_action(const ConformalChart& f, const ConformalChart& g,
                              int radial_levels, int angular_samples);

// Convenience: disk charts of the (resampled) curve, then liouville_action.
EnergyReport loop_energy_liouville(const CurvePolyline& curve, int radial_levels = 11,
                                   int angular_samples = 384,
                                   std::size_t resample_budget = 600);

// Energy of an open arc: close it with the hyperbolic geodesic of its
// complement and take the loop energy of the union.
EnergyReport arc_energy(const CurvePolyline& arc, std::size_t resample_budget = 600);

// Schwarzian derivative of the chart's forward map at an interior point.
cplx schwarzian(const ConformalChart& chart, const SpherePoint& z);

}  // namespace loewner
