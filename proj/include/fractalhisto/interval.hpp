#pragma once

#include <algorithm>
#include <cmath>

namespace fractalhisto {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    bool empty() const { return !(lo < hi); }
    bool contains(double t) const { return t >= lo && t <= hi; }
    double clamp(double t) const { return std::min(hi, std::max(lo, t)); }
};

}  // namespace fractalhisto
