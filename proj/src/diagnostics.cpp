#include "fractalhisto/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fractalhisto/errors.hpp"
#include "fractalhisto/histopolation.hpp"
#include "fractalhisto/rb_operator.hpp"

namespace fractalhisto {

Interval word_interval(const Partition& p, const Word& w) {
    const std::vector<AffineMap> maps = derive_affine_maps(p);
    // M = l_{w_0} o ... o l_{w_{p-1}}, composed from the innermost map out
    double a = 1.0;
    double b = 0.0;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        if (*it >= maps.size()) {
            std::ostringstream msg;
            msg << "word symbol " << *it << " out of range [0, " << maps.size() << ")";
            throw ArgumentError(msg.str());
        }
        const AffineMap& m = maps[*it];
        a = m.a * a;
        b = m.a * b + m.b;
    }
    return {a * p.lo() + b, a * p.hi() + b};
}

std::vector<double> discontinuity_points(const Partition& p, int depth) {
    if (depth < 0) throw ArgumentError("discontinuity_points needs depth >= 0");
    const std::vector<AffineMap> maps = derive_affine_maps(p);
    std::vector<double> interior(p.knots().begin() + 1, p.knots().end() - 1);

    std::vector<double> points = interior;  // depth 0: the knots themselves
    std::vector<double> frontier = interior;
    for (int level = 1; level <= depth; ++level) {
        std::vector<double> next;
        next.reserve(frontier.size() * maps.size());
        for (const AffineMap& m : maps) {
            for (double t : frontier) next.push_back(m(t));
        }
        points.insert(points.end(), next.begin(), next.end());
        frontier = std::move(next);
    }

    std::sort(points.begin(), points.end());
    std::vector<double> unique;
    for (double t : points) {
        if (unique.empty() || t - unique.back() > 1e-12) unique.push_back(t);
    }
    return unique;
}

double oscillation(const SampledFunction& h, double lo, double hi, bool include_right) {
    if (hi < lo) throw ArgumentError("oscillation needs lo <= hi");
    const double slack = 1e-12 * std::max(1.0, std::max(std::fabs(h.lo), std::fabs(h.hi)));
    double vmin = std::numeric_limits<double>::infinity();
    double vmax = -vmin;
    const std::size_t K = h.cells();
    std::size_t first = h.left_index(std::max(h.lo, lo));
    if (h.grid(first) < lo - slack) ++first;
    for (std::size_t i = first; i <= K; ++i) {
        const double g = h.grid(i);
        if (g > hi + slack) break;
        if (!include_right && g >= hi - slack) break;
        vmin = std::min(vmin, h.values[i]);
        vmax = std::max(vmax, h.values[i]);
    }
    if (!(vmin <= vmax)) {
        std::ostringstream msg;
        msg << "degenerate interval [" << lo << ", " << hi << "]: no grid point inside";
        throw ArgumentError(msg.str());
    }
    return vmax - vmin;
}

double oscillation_bound(const FractalSystem& sys, int p, double wI, double lenI) {
    if (p < 1) throw ArgumentError("oscillation_bound needs p >= 1");
    const double alpha = sys.alpha();
    const double delta = sys.delta_max();
    const double C = sys.c_max();
    if (!(delta < 1.0)) {
        std::ostringstream msg;
        msg << "oscillation bound needs delta_max < 1 (got " << delta
            << "); with delta_max >= 1 the depth-p term does not vanish";
        throw ValidationError(msg.str());
    }
    if (std::fabs(alpha - delta) <= 1e-12) {
        return std::pow(alpha, p) * wI + C * lenI * p * std::pow(alpha, p - 1);
    }
    const double geom = (std::pow(alpha, p) - std::pow(delta, p)) / (alpha - delta);
    return std::pow(delta, p) * wI + C * lenI * geom;
}

std::vector<RiemannRow> riemann_convergence(const FractalSystem& sys,
                                            const std::vector<std::size_t>& K_list, double tol,
                                            long max_iter) {
    for (std::size_t i = 1; i < K_list.size(); ++i) {
        if (K_list[i] <= K_list[i - 1]) throw ArgumentError("K_list must be increasing");
    }
    std::vector<RiemannRow> rows;
    rows.reserve(K_list.size());
    for (std::size_t K : K_list) {
        SampledFunction init = make_sampled(sys.interval(), K, 0.0);
        auto [f, trace] = fixed_point(sys, init, tol, max_iter);
        rows.push_back({K, integrate(f, f.lo, f.hi)});
    }
    return rows;
}

std::vector<OscillationRow> oscillation_vs_bound(const FractalSystem& sys,
                                                 const SampledFunction& f, int max_p) {
    if (max_p < 1) throw ArgumentError("oscillation_vs_bound needs max_p >= 1");
    const Partition& part = sys.partition();
    const double wI = oscillation(f, part.lo(), part.hi(), true);
    const double lenI = part.hi() - part.lo();
    const std::size_t N = part.size();

    std::vector<OscillationRow> rows;
    std::vector<Word> frontier{{}};
    for (int p = 1; p <= max_p; ++p) {
        std::vector<Word> next;
        next.reserve(frontier.size() * N);
        for (const Word& w : frontier) {
            for (std::size_t j = 0; j < N; ++j) {
                Word ext = w;
                ext.push_back(j);
                next.push_back(std::move(ext));
            }
        }
        frontier = std::move(next);
        const double bound = oscillation_bound(sys, p, wI, lenI);
        for (const Word& w : frontier) {
            const Interval J = word_interval(part, w);
            // half-open on the right except at t_N, matching I_j
            const bool closes_interval = J.hi >= part.hi() - 1e-12 * std::max(1.0, std::fabs(part.hi()));
            OscillationRow row;
            row.word = w;
            row.lo = J.lo;
            row.hi = J.hi;
            row.measured = oscillation(f, J.lo, J.hi, closes_interval);
            row.bound = bound;
            row.exceedance = std::max(0.0, row.measured - bound);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace fractalhisto
