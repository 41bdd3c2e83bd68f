#pragma once

#include "loewner/weld.hpp"

namespace loewner {

// Minimize Loewner energy over circle homeomorphisms with h(x_k) = y_k by
// cyclic circular-arc straightening of a representative curve.
struct WeldProblem {
    std::vector<double> x, y;  // constraint angles, strictly cyclically increasing
    CurvePolyline initial;     // marked curve whose welding meets the constraints
    double tol = 1e-3;         // per-arc circle-fit residual target
    std::size_t max_sweeps = 30;
    std::size_t arc_budget = 90;     // samples for the straightened arc
    std::size_t weld_samples = 420;  // welding resolution per step
    bool track_energy = true;
    int energy_levels = 8;
    int energy_angular = 128;
    std::size_t energy_budget = 260;

    void validate() const;
};

struct CircularFitReport {
    Circline circ;
    double residual = 0.0;     // sup distance of the arc samples to the circline
    double joint_angle = 0.0;  // angle between adjacent tangents at the arc's
                               // starting breakpoint (pi = smooth)
};

// Per-arc circline fits (algebraic least squares with a line fallback).
std::vector<CircularFitReport> circular_fit_report(const CurvePolyline& curve);

struct StraightenResult {
    CurvePolyline curve;
    WeldingSamples welding;
};

// One step of the welding optimization: opens the complement of arc k with
// the square map so the arc becomes a straight boundary ray, renormalizes
// three breakpoints onto (1, i, -1), and resamples the welding from the new
// curve. The welding class changes only on (x_k, x_{k+1}).
StraightenResult arc_straighten_step(const CurvePolyline& curve, std::size_t k,
                                     std::size_t arc_budget = 90,
                                     std::size_t weld_samples = 420);

struct WeldMinimizeResult {
    WeldingSamples welding;  // aligned onto the constraints
    CurvePolyline curve;
    std::vector<double> energy_trace;
    std::vector<CircularFitReport> fits;
    std::vector<double> constraint_residuals;  // per step, after alignment
    bool converged = false;
    std::size_t sweeps = 0;
};

WeldMinimizeResult minimize_welding(const WeldProblem& problem);

// Aligns a welding onto the constraint pairs via its breakpoints; returns the
// transformed welding and the worst constraint residual.
WeldingSamples align_to_constraints(const WeldingSamples& w,
                                    const std::vector<double>& x,
                                    const std::vector<double>& y,
                                    double* residual = nullptr);

// A simple closed curve whose welding sends x_k near y_k (residual < 1e-2 in
// angle): Moebius-compatible constraints give a marked circle; otherwise a
// damped Gauss-Newton search over spline control points fits the forward
// welding to the constraints.
CurvePolyline initial_constrained_curve(const std::vector<double>& x,
                                        const std::vector<double>& y,
                                        std::size_t weld_samples = 360,
                                        double target = 2e-3,
                                        std::size_t max_iter = 40);

}  // namespace loewner
