#include "fractalhisto/rb_operator.hpp"

#include <cmath>
#include <sstream>

#include "fractalhisto/errors.hpp"
#include "fractalhisto/parallel.hpp"

namespace fractalhisto {

SampledFunction apply_rb(const FractalSystem& sys, const SampledFunction& h) {
    const Interval I = sys.interval();
    const double slack = 1e-12 * std::max(1.0, std::max(std::fabs(I.lo), std::fabs(I.hi)));
    if (std::fabs(h.lo - I.lo) > slack || std::fabs(h.hi - I.hi) > slack) {
        throw ArgumentError("sampled function does not span the system's interval");
    }

    SampledFunction out = h;
    const std::size_t K = h.cells();
    parallel_for(0, K + 1, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double t = h.grid(i);
            const std::size_t j = sys.partition().locate(t);
            double u = sys.map(j).inverse(t);
            u = I.clamp(u);
            const double hu = evaluate(h, u);
            if (sys.s()[j].pole_distance(hu) < kPoleGuard) {
                std::ostringstream msg;
                msg << "reciprocal contraction in branch " << j << " hit its pole guard at t = "
                    << t << " (h(u) = " << hu << ")";
                throw PoleProximityError(msg.str(), t);
            }
            const double value = sys.branch_value(j, u, hu);
            if (!std::isfinite(value)) {
                std::ostringstream msg;
                msg << "operator produced a non-finite value at t = " << t;
                throw ValidationError(msg.str());
            }
            out.values[i] = value;
        }
    });
    return out;
}

std::pair<SampledFunction, ConvergenceTrace> fixed_point(const FractalSystem& sys,
                                                         const SampledFunction& init, double tol,
                                                         long max_iter) {
    if (!(tol > 0.0)) throw ArgumentError("fixed_point needs tol > 0");
    ConvergenceTrace trace;
    SampledFunction g = init;
    for (long n = 1; n <= max_iter; ++n) {
        SampledFunction next = apply_rb(sys, g);
        const double delta = sup_distance(next, g);
        trace.sup_deltas.push_back(delta);
        trace.iterations = n;
        trace.final_residual = delta;
        g = std::move(next);
        if (delta <= tol) return {std::move(g), std::move(trace)};
    }
    std::ostringstream msg;
    msg << "Read-Bajraktarevic iteration did not reach tol = " << tol << " in " << max_iter
        << " iterations; last sup delta " << trace.final_residual;
    throw ConvergenceError(msg.str(), trace.iterations, trace.final_residual,
                           std::move(trace.sup_deltas));
}

double residual(const FractalSystem& sys, const SampledFunction& h) {
    return sup_distance(apply_rb(sys, h), h);
}

}  // namespace fractalhisto
