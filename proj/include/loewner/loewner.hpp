#pragma once

#include "loewner/curve.hpp"
#include "loewner/driving.hpp"

namespace loewner {

// The simple curve in (H; 0, inf) driven by w, sampled at capacity times.
// Each sub-step uses the exact tilted-slit solution of the Loewner equation
// (driving proportional to sqrt(t) on the sub-step). steps_per_unit controls
// the sub-step density per unit of capacity time.
CurvePolyline trace(const DrivingFunction& w, int steps_per_unit,
                    std::vector<double>* capacity_times = nullptr);

// Capacity-parameterized driving function of a simple curve in H whose first
// sample lies on R (the starting position is subtracted so W(0) = 0).
DrivingFunction extract_driving(const CurvePolyline& chord);

// Chordal Loewner energy of a chord in (H; 0, inf).
double chord_energy_halfplane(const CurvePolyline& chord);

// Chordal energy of a chord joining prime ends a, b of the simply connected
// domain determined by domain_boundary: the complement of an open arc, or the
// side of a closed curve containing the chord. a and b must match boundary
// samples (the arc's endpoints in the open case).
double chord_energy_in_domain(const CurvePolyline& chord,
                              const CurvePolyline& domain_boundary,
                              const SpherePoint& a, const SpherePoint& b);

}  // namespace loewner
