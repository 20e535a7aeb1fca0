#include "fractalhisto/contraction_check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <vector>

#include "fractalhisto/errors.hpp"

namespace fractalhisto {

namespace {

// Raw mt19937_64 draws mapped to [0,1); the engine's output sequence is
// standardized, unlike the library distributions.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void require_range(const Interval& range) {
    if (range.empty()) {
        std::ostringstream msg;
        msg << "empty range [" << range.lo << ", " << range.hi << "]";
        throw ArgumentError(msg.str());
    }
}

// Positive abscissae covering (lo, hi]: a uniform sweep plus a geometric
// ladder toward lo (the modulus ratio typically peaks at small t).
std::vector<double> modulus_samples(const Interval& range, int n_samples) {
    require_range(range);
    if (range.lo < 0.0) throw ArgumentError("modulus range must lie in (0, inf)");
    std::vector<double> ts;
    ts.reserve(static_cast<std::size_t>(n_samples) + 64);
    const double floor = std::max(range.lo, 1e-12);
    for (double t = range.hi; t >= floor; t *= 0.5) ts.push_back(t);
    const double span = range.hi - range.lo;
    for (int i = 1; i <= n_samples; ++i) {
        ts.push_back(range.lo + span * static_cast<double>(i) / static_cast<double>(n_samples));
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    while (!ts.empty() && ts.front() <= 0.0) ts.erase(ts.begin());
    return ts;
}

}  // namespace

ContractionReport verify_modulus(const ModulusSpec& m, Interval range, int n_samples) {
    if (n_samples < 2) throw ArgumentError("verify_modulus needs n_samples >= 2");
    const std::vector<double> ts = modulus_samples(range, n_samples);

    ContractionReport rep;
    double prev_ratio = 0.0;
    bool have_prev = false;
    double prev_t = 0.0;
    for (double t : ts) {
        const double psi = m(t);
        const double shrink_violation = psi - t;  // must stay < 0
        if (shrink_violation > rep.max_violation) {
            rep.max_violation = shrink_violation;
            rep.witness = PairWitness{t, t};
        }
        const double ratio = psi / t;
        if (have_prev) {
            const double mono_violation = ratio - prev_ratio;  // ratio must not grow with t
            if (mono_violation > rep.max_violation) {
                rep.max_violation = mono_violation;
                rep.witness = PairWitness{prev_t, t};
            }
        }
        prev_ratio = ratio;
        prev_t = t;
        have_prev = true;
        ++rep.checked_pairs;
    }
    rep.passed = rep.max_violation <= kCheckTolerance;
    if (rep.passed) rep.witness.reset();
    return rep;
}

ContractionReport verify_contraction(const ContractionSpec& s, Interval range, int n_pairs,
                                     std::uint64_t seed) {
    require_range(range);
    if (n_pairs < 1) throw ArgumentError("verify_contraction needs n_pairs >= 1");
    std::mt19937_64 rng(seed);
    const ModulusSpec& psi = s.modulus();

    ContractionReport rep;
    rep.max_violation = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_pairs; ++i) {
        const double u = range.lo + range.width() * uniform01(rng);
        const double v = range.lo + range.width() * uniform01(rng);
        const double gap = std::fabs(u - v);
        if (gap == 0.0) continue;
        const double violation = std::fabs(s(u) - s(v)) - psi(gap);
        if (violation > rep.max_violation) {
            rep.max_violation = violation;
            rep.witness = PairWitness{u, v};
        }
        ++rep.checked_pairs;
    }
    rep.passed = rep.max_violation <= kCheckTolerance;
    if (rep.passed) rep.witness.reset();
    return rep;
}

std::optional<PairWitness> banach_witness(const ContractionSpec& s, double k, Interval range,
                                          int n_samples) {
    require_range(range);
    if (k < 0.0 || k >= 1.0) throw ArgumentError("banach_witness needs k in [0, 1)");

    std::vector<PairWitness> candidates;
    // Geometric ladder from the left endpoint; ratios psi(t)/t peak as t -> 0+.
    for (double step = range.width(); step > 1e-14 * range.width(); step *= 0.5) {
        candidates.push_back({range.lo, range.lo + step});
    }
    const int grid = std::max(2, n_samples);
    for (int i = 0; i + 1 < grid; ++i) {
        const double u = range.lo + range.width() * static_cast<double>(i) / (grid - 1);
        const double v = range.lo + range.width() * static_cast<double>(i + 1) / (grid - 1);
        candidates.push_back({u, v});
    }

    for (const auto& cand : candidates) {
        if (cand.u == cand.v) continue;
        if (std::fabs(s(cand.u) - s(cand.v)) > k * std::fabs(cand.u - cand.v)) return cand;
    }
    return std::nullopt;
}

ScalarFixedPoint scalar_fixed_point(const ContractionSpec& s, double x0, double tol,
                                    long max_iter) {
    if (!(tol > 0.0)) throw ArgumentError("scalar_fixed_point needs tol > 0");
    if (max_iter < 1) throw ArgumentError("scalar_fixed_point needs max_iter >= 1");
    double x = x0;
    for (long n = 1; n <= max_iter; ++n) {
        const double next = s(x);
        if (std::fabs(next - x) <= tol) return {next, n};
        x = next;
    }
    std::ostringstream msg;
    msg << "fixed-point iteration did not reach tol = " << tol << " in " << max_iter
        << " iterations; last iterate " << x << ", residual " << std::fabs(s(x) - x);
    throw ConvergenceError(msg.str(), max_iter, std::fabs(s(x) - x));
}

double estimate_beta(const ModulusSpec& m, Interval range, int n_samples) {
    const std::vector<double> ts = modulus_samples(range, n_samples);
    double best = 0.0;
    for (double t : ts) best = std::max(best, m(t) / t);
    return best;
}

}  // namespace fractalhisto
