#pragma once

#include "loewner/confmap.hpp"
#include "loewner/curve.hpp"

namespace loewner {

// Sampled welding homeomorphism of the circle: strictly cyclically increasing
// angle pairs theta -> image, with optional breakpoint pairs (x_k, y_k).
struct WeldingSamples {
    std::vector<double> theta;  // increasing from theta[0], range < 2*pi
    std::vector<double> image;  // unwrapped to be increasing; image[i] may exceed 2*pi
    std::vector<double> break_x, break_y;
    std::vector<std::size_t> break_index;  // positions of the breakpoints in theta

    std::size_t size() const { return theta.size(); }
    double eval(double angle) const;          // piecewise-linear circle map
    double eval_inverse(double angle) const;  // inverse circle map
    void validate(const char* who) const;
};

// Welding h = g^-1 . f of a closed curve, sampled at ~n_samples boundary
// points; curve marks induce breakpoints. The representative is pinned by a
// post-composition sending h(0), h(2pi/3), h(4pi/3) to 0, 2pi/3, 4pi/3.
WeldingSamples welding_from_curve(const CurvePolyline& curve, std::size_t n_samples);

struct MobiusPieceFit {
    MobiusReal map;
    double residual = 0.0;  // sup angle error over the piece's samples
};

// Per-piece real Moebius fits between consecutive breakpoints. The fit anchors
// three quantile samples and minimizes the cross-ratio mismatch of the
// remaining sample quadruples (exact for truly Moebius pieces).
std::vector<MobiusPieceFit> fit_mobius_pieces(const WeldingSamples& w);

// |log h'(x_k+) - log h'(x_k-)| at each breakpoint, from the adjacent fits.
std::vector<double> c1_break_report(const WeldingSamples& w,
                                    const std::vector<MobiusReal>& pieces);

struct WeldingAlignment {
    MobiusReal alpha, beta;  // beta . h . alpha^-1 ~ reference
    double sup_error = 0.0;
};

// Best PSL(2,R) x PSL(2,R) alignment of w onto ref (sup angle error metric).
WeldingAlignment align_weldings(const WeldingSamples& ref, const WeldingSamples& w,
                                int effort = 1);

// Applies (alpha, beta): h -> beta . h . alpha^-1, transported breakpoints.
WeldingSamples transform_welding(const WeldingSamples& w, const MobiusReal& alpha,
                                 const MobiusReal& beta);

}  // namespace loewner
