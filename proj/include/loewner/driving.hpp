#pragma once

#include <vector>

#include "loewner/common.hpp"

namespace loewner {

// Sampled driving function on a capacity-time grid, piecewise linear between
// samples. The half-plane capacity of the hull at times[i] is 2*times[i].
struct DrivingFunction {
    std::vector<double> times;   // strictly increasing, times[0] = 0
    std::vector<double> values;  // values[0] = 0

    double total_time() const { return times.empty() ? 0.0 : times.back(); }
    double value_at(double t) const;  // piecewise-linear interpolant

    void validate(const char* who) const;

    // Driving of the curve scaled by lambda (capacity reparameterized):
    // t -> lambda * W(t / lambda^2) on the grid lambda^2 * times.
    DrivingFunction scaled(double lambda) const;
    // Driving of the tail beyond split time s (grid point required):
    // t -> W(s+t) - W(s).
    DrivingFunction tail_from(std::size_t index) const;
    DrivingFunction restricted(std::size_t index) const;  // head up to grid index
};

// Exact Dirichlet energy (1/2) * integral of (dW/dt)^2 for the piecewise
// linear interpolant: (1/2) * sum (dW_i)^2 / dt_i.
double dirichlet_energy(const DrivingFunction& w);

}  // namespace loewner
