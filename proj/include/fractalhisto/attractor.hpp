#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fractalhisto/sampled_function.hpp"
#include "fractalhisto/system.hpp"

namespace fractalhisto {

struct Point {
    double t = 0.0;
    double x = 0.0;
};

enum class Provenance { chaos_game, deterministic, graph_samples };

struct PointCloud {
    std::vector<Point> points;
    Provenance provenance = Provenance::graph_samples;
    std::optional<std::uint64_t> seed;
};

/// Product-space IFS map w_j(t, x) = (l_j(t), F_j(t, x)); F_j is evaluated
/// at the input coordinate t. map_index is 0-based.
Point product_map(const FractalSystem& sys, std::size_t map_index, Point p);

/// eta = (1 - alpha) / (2 (C + 1)), the weight making every w_j a Rakotch
/// contraction in the d_eta metric.
double eta(const FractalSystem& sys);

/// d_eta((t,x),(t',x')) = |t - t'| + eta |x - x'|.
double d_eta(Point p, Point q, double eta);

/// Random iteration from (t_0, 0): apply a uniformly chosen w_j per step,
/// discard the first burn_in points, keep the next n. Deterministic per seed.
PointCloud chaos_game(const FractalSystem& sys, long n, long burn_in, std::uint64_t seed);

struct AttractorOptions {
    std::size_t max_points = 1 << 20;
    bool decimate = true;  // uniform decimation once past max_points
};

/// Applies the union-of-images operator W(K) = union_j w_j(K) depth times.
/// Growth is N^depth; without decimation, exceeding max_points is an error.
PointCloud deterministic_attractor(const FractalSystem& sys, const PointCloud& init, int depth,
                                   const AttractorOptions& opts = {});

/// The grid samples (g_i, h(g_i)) as a cloud.
PointCloud graph_samples(const SampledFunction& h);

/// max over p in a of min over q in b of d_eta(p, q). Exact: the sorted-scan
/// pruning only skips points whose |t - t'| already exceeds the best bound.
double hausdorff_one_sided(const PointCloud& a, const PointCloud& b, double eta);

}  // namespace fractalhisto
