#include "fractalhisto/partition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fractalhisto/errors.hpp"

namespace fractalhisto {

Partition::Partition(std::vector<double> knots) : knots_(std::move(knots)) {}

std::size_t Partition::locate(double t) const {
    const std::size_t N = size();
    if (t >= knots_[N - 1]) return N - 1;  // last interval is closed
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    if (it == knots_.begin()) return 0;
    return static_cast<std::size_t>(it - knots_.begin()) - 1;
}

Partition build_partition(std::vector<double> knots) {
    if (knots.size() < 3) {
        throw ArgumentError("partition needs at least 3 knots (N > 1), got " +
                            std::to_string(knots.size()));
    }
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (!std::isfinite(knots[i])) {
            throw ValidationError("partition knot at index " + std::to_string(i) +
                                  " is not finite");
        }
        if (i > 0 && !(knots[i - 1] < knots[i])) {
            throw ValidationError("partition knots must be strictly increasing: violation at index " +
                                  std::to_string(i));
        }
    }
    return Partition(std::move(knots));
}

std::vector<AffineMap> derive_affine_maps(const Partition& p) {
    const double t0 = p.lo();
    const double tN = p.hi();
    const double len = tN - t0;
    std::vector<AffineMap> maps;
    maps.reserve(p.size());
    for (std::size_t j = 1; j <= p.size(); ++j) {
        const double a = (p.knot(j) - p.knot(j - 1)) / len;
        const double b = p.knot(j - 1) - a * t0;
        maps.push_back({a, b});
    }
    return maps;
}

}  // namespace fractalhisto
