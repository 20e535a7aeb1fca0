#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "fractalhisto/interval.hpp"

namespace fractalhisto {

enum class InterpMode { nearest_left, linear };

/// A bounded function on I represented by K+1 samples on a uniform grid.
/// nearest_left reads the value at the greatest grid point <= t, which keeps
/// jump discontinuities sharp; linear interpolates affinely between nodes.
struct SampledFunction {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<double> values;
    InterpMode mode = InterpMode::nearest_left;

    std::size_t cells() const { return values.size() - 1; }  // K
    double step() const { return (hi - lo) / static_cast<double>(cells()); }
    double grid(std::size_t i) const {
        return i == cells() ? hi : lo + static_cast<double>(i) * step();
    }
    Interval interval() const { return {lo, hi}; }

    /// Index of the greatest grid point <= t (t must lie in [lo, hi]).
    std::size_t left_index(double t) const;
};

/// Uniform grid over I with K cells, K >= 8. Values from a constant or a callable.
SampledFunction make_sampled(Interval I, std::size_t K, double constant,
                             InterpMode mode = InterpMode::nearest_left);
SampledFunction make_sampled(Interval I, std::size_t K, const std::function<double(double)>& init,
                             InterpMode mode = InterpMode::nearest_left);

/// Evaluate at t in I (clamped within a 1e-12 slack; beyond it, domain error).
double evaluate(const SampledFunction& h, double t);

/// Discrete sup norm of the node-value difference (grids must match).
double sup_distance(const SampledFunction& a, const SampledFunction& b);

}  // namespace fractalhisto
