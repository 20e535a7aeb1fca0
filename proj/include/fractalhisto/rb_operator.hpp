#pragma once

#include <utility>
#include <vector>

#include "fractalhisto/sampled_function.hpp"
#include "fractalhisto/system.hpp"

namespace fractalhisto {

struct ConvergenceTrace {
    long iterations = 0;
    std::vector<double> sup_deltas;  // ||g_{n+1} - g_n||_inf per step
    double final_residual = 0.0;     // last recorded sup delta
};

/// One application of the Read-Bajraktarevic operator on the grid:
/// (Th)(t) = c_j u + delta_j(u) s_j(h(u)) + d_j with u = l_j^{-1}(t) and j
/// the subinterval of t (left-closed, last closed). The scaling factor is
/// evaluated at the pre-image u, consistent with F_j(l_j^{-1}(t), .).
SampledFunction apply_rb(const FractalSystem& sys, const SampledFunction& h);

/// Picard iteration g <- T g until ||g_{n+1} - g_n||_inf <= tol.
/// Throws ConvergenceError carrying the trace when max_iter is exhausted.
std::pair<SampledFunction, ConvergenceTrace> fixed_point(const FractalSystem& sys,
                                                         const SampledFunction& init, double tol,
                                                         long max_iter = 1000);

/// sup over grid points of |h(t) - (Th)(t)|: how far h is from satisfying
/// the self-referential equation.
double residual(const FractalSystem& sys, const SampledFunction& h);

}  // namespace fractalhisto
