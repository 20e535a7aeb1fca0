#include "fractalhisto/histopolation.hpp"

#include <cmath>
#include <sstream>

#include "fractalhisto/errors.hpp"

namespace fractalhisto {

namespace {

// Exact integral of the interpolant over [a, b] inside a single cell.
double cell_piece(const SampledFunction& h, std::size_t i, double a, double b) {
    if (b <= a) return 0.0;
    if (h.mode == InterpMode::nearest_left) return h.values[i] * (b - a);
    const double gi = h.grid(i);
    const double hstep = h.step();
    auto interp = [&](double t) {
        const double lambda = (t - gi) / hstep;
        return h.values[i] * (1.0 - lambda) + h.values[i + 1] * lambda;
    };
    return 0.5 * (interp(a) + interp(b)) * (b - a);
}

FractalSystem problem_system(const HistopolationProblem& prob, std::vector<double> d) {
    return assemble_system(prob.partition, prob.c, std::move(d), prob.delta, prob.s,
                           SystemMode::histopolation);
}

}  // namespace

double integrate(const SampledFunction& h, double a, double b) {
    if (b < a) {
        std::ostringstream msg;
        msg << "reversed integration bounds [" << a << ", " << b << "]";
        throw ArgumentError(msg.str());
    }
    const double slack = 1e-12 * std::max(1.0, std::max(std::fabs(h.lo), std::fabs(h.hi)));
    if (a < h.lo - slack || b > h.hi + slack) {
        throw ArgumentError("integration bounds outside the sampled interval");
    }
    a = std::min(h.hi, std::max(h.lo, a));
    b = std::min(h.hi, std::max(h.lo, b));
    if (a == b) return 0.0;

    const std::size_t ia = h.left_index(a);
    const std::size_t ib = h.left_index(b);
    if (ia == ib) return cell_piece(h, ia, a, b);  // both bounds inside one cell

    // Exact integral of the interpolant: left rectangles in nearest-left
    // mode (keeps piecewise-constant solutions exact across jump nodes),
    // composite trapezoid in linear mode.
    double total = cell_piece(h, ia, a, h.grid(ia + 1));
    double interior = 0.0;
    if (h.mode == InterpMode::nearest_left) {
        for (std::size_t i = ia + 1; i < ib; ++i) interior += h.values[i];
    } else {
        for (std::size_t i = ia + 1; i < ib; ++i) interior += 0.5 * (h.values[i] + h.values[i + 1]);
    }
    total += interior * h.step();
    if (h.grid(ib) < b) total += cell_piece(h, ib, h.grid(ib), b);
    return total;
}

std::vector<double> initial_offsets(const HistopolationProblem& prob) {
    const double t0 = prob.partition.lo();
    const double tN = prob.partition.hi();
    const double len = tN - t0;
    const double sq = tN * tN - t0 * t0;
    std::vector<double> d(prob.partition.size());
    for (std::size_t j = 0; j < d.size(); ++j) {
        d[j] = (2.0 * prob.histogram.frequencies[j] * len - prob.c[j] * sq) / (2.0 * len);
    }
    return d;
}

HistopolationSolution solve(const HistopolationProblem& prob) {
    const std::size_t N = prob.partition.size();
    if (prob.histogram.frequencies.size() != N) {
        std::ostringstream msg;
        msg << "histogram has " << prob.histogram.frequencies.size() << " frequencies, expected N = "
            << N;
        throw ValidationError(msg.str());
    }
    const SolverSettings& cfg = prob.settings;
    const double t0 = prob.partition.lo();
    const double tN = prob.partition.hi();
    const double len = tN - t0;
    const double sq = tN * tN - t0 * t0;

    std::vector<double> d = initial_offsets(prob);
    SampledFunction f = make_sampled(prob.partition.interval(), cfg.K, 0.0, cfg.interp);

    HistopolationSolution sol{problem_system(prob, d), f, {}, {}, {}, 0};
    bool converged = false;
    for (long outer = 1; outer <= cfg.max_outer; ++outer) {
        FractalSystem sys = problem_system(prob, d);
        auto [fx, trace] = fixed_point(sys, f, cfg.tol_inner, cfg.max_inner);
        f = std::move(fx);
        sol.inner_iterations_total += trace.iterations;

        // offset update from the area condition, with the scaling factor
        // kept inside the integral (covers variable delta_j)
        std::vector<double> d_next(N);
        std::vector<double> integrals(N);
        for (std::size_t j = 0; j < N; ++j) {
            SampledFunction weighted = f;
            for (std::size_t i = 0; i < f.values.size(); ++i) {
                const double t = f.grid(i);
                weighted.values[i] = prob.delta[j](t) * prob.s[j](f.values[i]);
            }
            integrals[j] = integrate(weighted, t0, tN);
            d_next[j] = (2.0 * prob.histogram.frequencies[j] * len - prob.c[j] * sq -
                         2.0 * integrals[j]) /
                        (2.0 * len);
        }
        double change = 0.0;
        for (std::size_t j = 0; j < N; ++j) change = std::max(change, std::fabs(d_next[j] - d[j]));
        sol.outer_trace.push_back({d_next, change});
        d = std::move(d_next);
        sol.s_integrals = std::move(integrals);
        if (change <= cfg.tol_outer) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        std::vector<double> changes;
        changes.reserve(sol.outer_trace.size());
        for (const auto& step : sol.outer_trace) changes.push_back(step.max_change);
        std::ostringstream msg;
        msg << "offset iteration did not reach tol_outer = " << cfg.tol_outer << " in "
            << cfg.max_outer << " outer steps; last change "
            << (changes.empty() ? 0.0 : changes.back());
        throw ConvergenceError(msg.str(), cfg.max_outer,
                               changes.empty() ? 0.0 : changes.back(), std::move(changes));
    }

    // final inner solve so the returned f matches the converged offsets
    sol.system = problem_system(prob, d);
    auto [fx, trace] = fixed_point(sol.system, f, cfg.tol_inner, cfg.max_inner);
    sol.f = std::move(fx);
    sol.inner_iterations_total += trace.iterations;
    sol.area_residuals = verify_areas(sol.f, prob);
    for (std::size_t j = 0; j < N; ++j) {
        SampledFunction weighted = sol.f;
        for (std::size_t i = 0; i < sol.f.values.size(); ++i) {
            const double t = sol.f.grid(i);
            weighted.values[i] = prob.delta[j](t) * prob.s[j](sol.f.values[i]);
        }
        sol.s_integrals[j] = integrate(weighted, t0, tN);
    }
    return sol;
}

std::vector<double> verify_areas(const SampledFunction& f, const HistopolationProblem& prob) {
    const double len = prob.partition.hi() - prob.partition.lo();
    const std::vector<AffineMap> maps = derive_affine_maps(prob.partition);
    std::vector<double> residuals(prob.partition.size());
    for (std::size_t j = 0; j < residuals.size(); ++j) {
        const double area = integrate(f, prob.partition.knot(j), prob.partition.knot(j + 1));
        residuals[j] = area - prob.histogram.frequencies[j] * maps[j].a * len;
    }
    return residuals;
}

std::vector<double> offset_residual(const FractalSystem& sys, const SampledFunction& f,
                                    const Histogram& hist) {
    const double t0 = sys.partition().lo();
    const double tN = sys.partition().hi();
    const double len = tN - t0;
    const double sq = tN * tN - t0 * t0;
    std::vector<double> residuals(sys.branches());
    for (std::size_t j = 0; j < residuals.size(); ++j) {
        SampledFunction weighted = f;
        for (std::size_t i = 0; i < f.values.size(); ++i) {
            const double t = f.grid(i);
            weighted.values[i] = sys.delta()[j](t) * sys.s()[j](f.values[i]);
        }
        const double integral = integrate(weighted, t0, tN);
        const double rhs =
            (2.0 * hist.frequencies[j] * len - sys.c()[j] * sq - 2.0 * integral) / (2.0 * len);
        residuals[j] = sys.d()[j] - rhs;
    }
    return residuals;
}

}  // namespace fractalhisto
