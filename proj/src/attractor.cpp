#include "fractalhisto/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <random>
#include <sstream>

#include "fractalhisto/errors.hpp"
#include "fractalhisto/parallel.hpp"

namespace fractalhisto {

Point product_map(const FractalSystem& sys, std::size_t map_index, Point p) {
    if (map_index >= sys.branches()) {
        std::ostringstream msg;
        msg << "map index " << map_index << " out of range [0, " << sys.branches() << ")";
        throw ArgumentError(msg.str());
    }
    if (sys.s()[map_index].pole_distance(p.x) < kPoleGuard) {
        std::ostringstream msg;
        msg << "reciprocal contraction in branch " << map_index
            << " hit its pole guard at x = " << p.x;
        throw PoleProximityError(msg.str(), p.x);
    }
    return {sys.map(map_index)(p.t), sys.branch_value(map_index, p.t, p.x)};
}

double eta(const FractalSystem& sys) {
    return (1.0 - sys.alpha()) / (2.0 * (sys.c_max() + 1.0));
}

double d_eta(Point p, Point q, double eta) {
    return std::fabs(p.t - q.t) + eta * std::fabs(p.x - q.x);
}

PointCloud chaos_game(const FractalSystem& sys, long n, long burn_in, std::uint64_t seed) {
    if (n < 1) throw ArgumentError("chaos_game needs n >= 1");
    if (burn_in < 0) throw ArgumentError("chaos_game needs burn_in >= 0");

    std::mt19937_64 rng(seed);
    const std::uint64_t N = sys.branches();
    PointCloud cloud;
    cloud.provenance = Provenance::chaos_game;
    cloud.seed = seed;
    cloud.points.reserve(static_cast<std::size_t>(n));

    Point p{sys.partition().lo(), 0.0};
    for (long i = 0; i < burn_in + n; ++i) {
        const auto j = static_cast<std::size_t>(rng() % N);
        p = product_map(sys, j, p);
        if (i >= burn_in) cloud.points.push_back(p);
    }
    return cloud;
}

PointCloud deterministic_attractor(const FractalSystem& sys, const PointCloud& init, int depth,
                                   const AttractorOptions& opts) {
    if (depth < 1) throw ArgumentError("deterministic_attractor needs depth >= 1");
    if (init.points.empty()) throw ArgumentError("deterministic_attractor needs a nonempty seed cloud");

    const std::size_t N = sys.branches();
    std::vector<Point> current = init.points;
    for (int level = 0; level < depth; ++level) {
        if (current.size() * N > opts.max_points) {
            if (!opts.decimate) {
                std::ostringstream msg;
                msg << "cloud would exceed " << opts.max_points << " points at depth " << level + 1
                    << "; enable decimation or lower the depth";
                throw ValidationError(msg.str());
            }
            const std::size_t keep = std::max<std::size_t>(1, opts.max_points / N);
            const std::size_t stride = (current.size() + keep - 1) / keep;
            std::vector<Point> thinned;
            thinned.reserve(current.size() / stride + 1);
            for (std::size_t i = 0; i < current.size(); i += stride) thinned.push_back(current[i]);
            current = std::move(thinned);
        }
        std::vector<Point> next;
        next.reserve(current.size() * N);
        for (std::size_t j = 0; j < N; ++j) {
            for (const Point& p : current) next.push_back(product_map(sys, j, p));
        }
        current = std::move(next);
    }
    PointCloud out;
    out.points = std::move(current);
    out.provenance = Provenance::deterministic;
    return out;
}

PointCloud graph_samples(const SampledFunction& h) {
    PointCloud cloud;
    cloud.provenance = Provenance::graph_samples;
    cloud.points.reserve(h.values.size());
    for (std::size_t i = 0; i < h.values.size(); ++i) cloud.points.push_back({h.grid(i), h.values[i]});
    return cloud;
}

double hausdorff_one_sided(const PointCloud& a, const PointCloud& b, double eta) {
    if (a.points.empty() || b.points.empty()) {
        throw ArgumentError("hausdorff_one_sided needs two nonempty clouds");
    }

    // b sorted by t; |t - t'| lower-bounds d_eta, so scanning outward from
    // the insertion point can stop once the t gap alone exceeds the best
    // candidate. Exact, just faster than the double loop on dense clouds.
    std::vector<Point> sorted = b.points;
    std::sort(sorted.begin(), sorted.end(), [](const Point& p, const Point& q) {
        return p.t < q.t || (p.t == q.t && p.x < q.x);
    });

    const auto nearest = [&](const Point& p) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), p.t,
                                   [](const Point& q, double t) { return q.t < t; });
        double best = std::numeric_limits<double>::infinity();
        auto right = it;
        auto left = it;
        bool more_right = right != sorted.end();
        bool more_left = left != sorted.begin();
        while (more_right || more_left) {
            if (more_right) {
                if (right->t - p.t >= best) {
                    more_right = false;
                } else {
                    best = std::min(best, d_eta(p, *right, eta));
                    ++right;
                    if (right == sorted.end()) more_right = false;
                }
            }
            if (more_left) {
                auto prev = std::prev(left);
                if (p.t - prev->t >= best) {
                    more_left = false;
                } else {
                    best = std::min(best, d_eta(p, *prev, eta));
                    left = prev;
                    if (left == sorted.begin()) more_left = false;
                }
            }
        }
        return best;
    };

    std::mutex mx;
    double result = 0.0;
    parallel_for(0, a.points.size(), [&](std::size_t begin, std::size_t end) {
        double local = 0.0;
        for (std::size_t i = begin; i < end; ++i) local = std::max(local, nearest(a.points[i]));
        std::lock_guard<std::mutex> lock(mx);
        result = std::max(result, local);
    });
    return result;
}

}  // namespace fractalhisto
