#pragma once

#include <cstddef>
#include <vector>

#include "fractalhisto/sampled_function.hpp"
#include "fractalhisto/system.hpp"

namespace fractalhisto {

/// Finite map-index sequence (0-based symbols); the composition
/// l_{w_0} o ... o l_{w_{p-1}} sends I to a depth-p subinterval.
using Word = std::vector<std::size_t>;

/// Image of I under the word's composition, as [M(t_0), M(t_N)].
Interval word_interval(const Partition& p, const Word& w);

/// All images l_w(t_k) of interior knots under words of length <= depth,
/// sorted and deduplicated within 1e-12. Depth 0 gives the knots themselves.
std::vector<double> discontinuity_points(const Partition& p, int depth);

/// max - min of the values at grid points inside [lo, hi] (include_right
/// false drops grid points equal to hi, the half-open convention).
/// Throws ArgumentError when the interval contains no grid point.
double oscillation(const SampledFunction& h, double lo, double hi, bool include_right = true);

/// The depth-p oscillation bound
///   delta^p wI + C lenI (alpha^p - delta^p) / (alpha - delta)
/// (limit form alpha^p wI + C lenI p alpha^{p-1} when |alpha - delta| <= 1e-12).
/// Requires delta_max < 1; otherwise the bound is vacuous and this throws.
double oscillation_bound(const FractalSystem& sys, int p, double wI, double lenI);

struct RiemannRow {
    std::size_t K = 0;
    double integral = 0.0;
};

/// Re-solves the RB fixed point at each K and integrates it over I.
std::vector<RiemannRow> riemann_convergence(const FractalSystem& sys,
                                            const std::vector<std::size_t>& K_list,
                                            double tol = 1e-10, long max_iter = 1000);

struct OscillationRow {
    Word word;
    double lo = 0.0;
    double hi = 0.0;
    double measured = 0.0;
    double bound = 0.0;
    double exceedance = 0.0;  // max(0, measured - bound)
};

/// Measured grid oscillation on every word interval of length p <= max_p
/// against the depth-p bound (wI = measured oscillation on I, lenI = |I|).
/// Word intervals are half-open on the right except at t_N, matching the
/// subinterval convention.
std::vector<OscillationRow> oscillation_vs_bound(const FractalSystem& sys,
                                                 const SampledFunction& f, int max_p);

}  // namespace fractalhisto
