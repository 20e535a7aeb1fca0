#pragma once

#include <cstddef>
#include <vector>

#include "fractalhisto/interval.hpp"

namespace fractalhisto {

/// Strictly increasing knots t_0 < t_1 < ... < t_N over I = [t_0, t_N].
/// Subintervals follow the left-closed convention: I_j = [t_{j-1}, t_j)
/// for j < N and I_N = [t_{N-1}, t_N].
class Partition {
  public:
    explicit Partition(std::vector<double> knots);

    std::size_t size() const { return knots_.size() - 1; }  // N
    const std::vector<double>& knots() const { return knots_; }
    double knot(std::size_t i) const { return knots_[i]; }
    double lo() const { return knots_.front(); }
    double hi() const { return knots_.back(); }
    Interval interval() const { return {lo(), hi()}; }

    /// 0-based index j of the subinterval containing t (left-closed, last
    /// interval closed). t outside [t_0, t_N] clamps to the end intervals.
    std::size_t locate(double t) const;

  private:
    std::vector<double> knots_;
};

struct AffineMap {
    double a = 0.0;
    double b = 0.0;

    double operator()(double t) const { return a * t + b; }
    double inverse(double t) const { return (t - b) / a; }
};

/// Validates ordering and arity (at least 3 knots, so N >= 2).
Partition build_partition(std::vector<double> knots);

/// l_j(t) = a_j t + b_j with l_j(t_0) = t_{j-1} and l_j(t_N) = t_j.
std::vector<AffineMap> derive_affine_maps(const Partition& p);

}  // namespace fractalhisto
