#pragma once

#include <vector>

#include "fractalhisto/rb_operator.hpp"
#include "fractalhisto/sampled_function.hpp"
#include "fractalhisto/system.hpp"

namespace fractalhisto {

struct SolverSettings {
    std::size_t K = 1 << 14;
    double tol_inner = 1e-10;
    double tol_outer = 1e-8;
    long max_outer = 200;
    long max_inner = 1000;
    InterpMode interp = InterpMode::nearest_left;
    double area_tol = 1e-3;
};

/// Inputs of the area-matching problem: find offsets d so that the RB fixed
/// point integrates to y_j * |I_j| over every bin.
struct HistopolationProblem {
    Partition partition;
    Histogram histogram;
    std::vector<double> c;
    std::vector<ScalingSpec> delta;
    std::vector<ContractionSpec> s;
    SolverSettings settings;
};

struct OuterStep {
    std::vector<double> d;
    double max_change = 0.0;
};

struct HistopolationSolution {
    FractalSystem system;  // carries the solved d
    SampledFunction f;
    std::vector<OuterStep> outer_trace;
    std::vector<double> area_residuals;
    std::vector<double> s_integrals;  // per-branch integral of delta_j(t) s_j(f(t)) over I
    long inner_iterations_total = 0;
};

/// Composite trapezoid over the grid points in [a, b]; partial end cells are
/// integrated exactly under the function's interpolation mode.
double integrate(const SampledFunction& h, double a, double b);

/// Offsets with the self-referential integral term set to zero:
/// d_j = (2 y_j (tN - t0) - c_j (tN^2 - t0^2)) / (2 (tN - t0)).
std::vector<double> initial_offsets(const HistopolationProblem& prob);

/// Block fixed-point iteration: alternate the inner RB solve (warm-started)
/// with the offset update
///   d_j = (2 y_j (tN-t0) - c_j (tN^2-t0^2) - 2 int_I delta_j(t) s_j(f(t)) dt)
///         / (2 (tN-t0))
/// until max_j |d_j change| <= tol_outer. Convergence is certified a
/// posteriori through the returned residuals, not assumed.
HistopolationSolution solve(const HistopolationProblem& prob);

/// Per-bin residual: integral of f over I_j minus y_j a_j (tN - t0).
std::vector<double> verify_areas(const SampledFunction& f, const HistopolationProblem& prob);

/// Per-branch difference between sys's d_j and the offset formula evaluated
/// with the supplied f: the iff certificate of the area property.
std::vector<double> offset_residual(const FractalSystem& sys, const SampledFunction& f,
                                    const Histogram& hist);

}  // namespace fractalhisto
