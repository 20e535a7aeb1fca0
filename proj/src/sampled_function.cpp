#include "fractalhisto/sampled_function.hpp"

#include <cmath>
#include <sstream>

#include "fractalhisto/errors.hpp"

namespace fractalhisto {

std::size_t SampledFunction::left_index(double t) const {
    const std::size_t K = cells();
    const double h = step();
    double pos = (t - lo) / h;
    if (pos <= 0.0) return 0;
    if (pos >= static_cast<double>(K)) return K;
    auto i = static_cast<std::size_t>(pos);
    // float fixups so the result is exactly the greatest grid point <= t
    while (i > 0 && grid(i) > t) --i;
    while (i < K && grid(i + 1) <= t) ++i;
    return i;
}

namespace {

SampledFunction make_base(Interval I, std::size_t K, InterpMode mode) {
    if (I.empty()) throw ArgumentError("sampling interval is empty");
    if (K < 8) {
        std::ostringstream msg;
        msg << "grid needs K >= 8 cells, got K = " << K;
        throw ArgumentError(msg.str());
    }
    SampledFunction h;
    h.lo = I.lo;
    h.hi = I.hi;
    h.mode = mode;
    h.values.resize(K + 1);
    return h;
}

}  // namespace

SampledFunction make_sampled(Interval I, std::size_t K, double constant, InterpMode mode) {
    if (!std::isfinite(constant)) throw ValidationError("initial value is not finite");
    SampledFunction h = make_base(I, K, mode);
    for (auto& v : h.values) v = constant;
    return h;
}

SampledFunction make_sampled(Interval I, std::size_t K, const std::function<double(double)>& init,
                             InterpMode mode) {
    SampledFunction h = make_base(I, K, mode);
    for (std::size_t i = 0; i <= K; ++i) {
        h.values[i] = init(h.grid(i));
        if (!std::isfinite(h.values[i])) {
            std::ostringstream msg;
            msg << "initializer produced a non-finite value at t = " << h.grid(i);
            throw ValidationError(msg.str());
        }
    }
    return h;
}

double evaluate(const SampledFunction& h, double t) {
    const double slack = 1e-12 * std::max(1.0, std::max(std::fabs(h.lo), std::fabs(h.hi)));
    if (t < h.lo - slack || t > h.hi + slack) {
        std::ostringstream msg;
        msg << "evaluation point t = " << t << " lies outside [" << h.lo << ", " << h.hi << "]";
        throw ArgumentError(msg.str());
    }
    t = std::min(h.hi, std::max(h.lo, t));
    const std::size_t i = h.left_index(t);
    if (h.mode == InterpMode::nearest_left || i == h.cells()) return h.values[i];
    const double gi = h.grid(i);
    const double lambda = (t - gi) / h.step();
    return h.values[i] * (1.0 - lambda) + h.values[i + 1] * lambda;
}

double sup_distance(const SampledFunction& a, const SampledFunction& b) {
    if (a.values.size() != b.values.size() || a.lo != b.lo || a.hi != b.hi) {
        throw ArgumentError("sup_distance needs matching grids");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        m = std::max(m, std::fabs(a.values[i] - b.values[i]));
    }
    return m;
}

}  // namespace fractalhisto
