#pragma once

// Shared fixture systems used across the test suites.

#include "fractalhisto/histopolation.hpp"
#include "fractalhisto/system.hpp"

namespace fixtures {

using namespace fractalhisto;

// Sine system with variable scaling factors delta_1(t) = 3t/2, delta_2(t) = 7t/4
// (delta_max = 7/4 > 1), s_j(x) = sin(x)/2 against psi(t) = t/2, offsets 1/3 and 1/6.
inline FractalSystem sine_system() {
    Partition part = build_partition({0.0, 0.5, 1.0});
    ModulusSpec psi = ModulusSpec::linear(0.5);
    std::vector<ContractionSpec> s{{ContractionKind::scaled_sine, 0.5, psi},
                                   {ContractionKind::scaled_sine, 0.5, psi}};
    std::vector<ScalingSpec> delta{ScalingSpec::linear_in_t(1.5), ScalingSpec::linear_in_t(1.75)};
    return assemble_system(std::move(part), {0.5, 0.25}, {1.0 / 3.0, 1.0 / 6.0},
                           std::move(delta), std::move(s), SystemMode::construction);
}

// Reciprocal histopolation problem: histogram {5, 6}, c = (1/2, 1/4),
// delta = (1/2, 1/4), s_j(x) = 1/(1+x) against psi(t) = t/(1+t).
inline HistopolationProblem reciprocal_problem(std::size_t K = 1 << 10) {
    HistopolationProblem prob{build_partition({0.0, 0.5, 1.0}),
                              Histogram{{5.0, 6.0}},
                              {0.5, 0.25},
                              {ScalingSpec::constant(0.5), ScalingSpec::constant(0.25)},
                              {},
                              {}};
    ModulusSpec psi = ModulusSpec::hyperbolic();
    prob.s.push_back({ContractionKind::reciprocal, 1.0, psi});
    prob.s.push_back({ContractionKind::reciprocal, 1.0, psi});
    prob.settings.K = K;
    return prob;
}

inline FractalSystem reciprocal_system(std::vector<double> d) {
    HistopolationProblem prob = reciprocal_problem();
    return assemble_system(prob.partition, prob.c, std::move(d), prob.delta, prob.s,
                           SystemMode::histopolation);
}

// delta = 0 control: the fixed point is the piecewise affine
//   f(t) = t + 5        on [0, 1/2)
//   f(t) = t/2 + 5.75   on [1/2, 1]
// with a jump of 1/2 at the interior knot.
inline FractalSystem affine_control() {
    Partition part = build_partition({0.0, 0.5, 1.0});
    ModulusSpec psi = ModulusSpec::linear(0.5);
    std::vector<ContractionSpec> s{{ContractionKind::linear, 0.5, psi},
                                   {ContractionKind::linear, 0.5, psi}};
    std::vector<ScalingSpec> delta{ScalingSpec::constant(0.0), ScalingSpec::constant(0.0)};
    return assemble_system(std::move(part), {0.5, 0.25}, {5.0, 6.0}, std::move(delta),
                           std::move(s), SystemMode::construction);
}

inline double affine_control_value(double t) {
    return t < 0.5 ? t + 5.0 : 0.5 * t + 5.75;
}

}  // namespace fixtures
