#pragma once

#include <cstddef>
#include <vector>

#include "fractalhisto/catalog.hpp"
#include "fractalhisto/partition.hpp"

namespace fractalhisto {

/// Bin frequencies y_1 .. y_N. Values are unrestricted reals.
struct Histogram {
    std::vector<double> frequencies;
};

enum class SystemMode { construction, histopolation };

/// The validated static data of the fractal system: partition, affine maps
/// l_j, the F_j(t, x) = c_j t + delta_j(t) s_j(x) + d_j coefficients, and
/// the aggregates every solver consumes. Immutable after assembly.
///
/// Admissibility, checked at assembly:
///   beta < 1  ->  delta_max * beta < 1
///   beta = 1  ->  delta_max < 1
///   histopolation mode additionally requires delta_max < 1.
class FractalSystem {
  public:
    FractalSystem(Partition partition, std::vector<double> c, std::vector<double> d,
                  std::vector<ScalingSpec> delta, std::vector<ContractionSpec> s,
                  SystemMode mode);

    const Partition& partition() const { return partition_; }
    std::size_t branches() const { return partition_.size(); }  // N
    const std::vector<AffineMap>& maps() const { return maps_; }
    const AffineMap& map(std::size_t j) const { return maps_[j]; }
    const std::vector<double>& c() const { return c_; }
    const std::vector<double>& d() const { return d_; }
    const std::vector<ScalingSpec>& delta() const { return delta_; }
    const std::vector<ContractionSpec>& s() const { return s_; }
    SystemMode mode() const { return mode_; }
    Interval interval() const { return partition_.interval(); }

    double alpha() const { return alpha_; }          // max_j |a_j|
    double c_max() const { return c_max_; }          // max_j |c_j|
    double delta_max() const { return delta_max_; }  // max_j sup_I |delta_j|
    double beta() const { return beta_; }            // from the shared modulus
    const ModulusSpec& modulus() const { return s_.front().modulus(); }

    /// F_j evaluated at a pre-image coordinate: c_j u + delta_j(u) s_j(x) + d_j.
    double branch_value(std::size_t j, double u, double x) const;

    /// Replace the offset vector d (admissibility does not depend on d).
    FractalSystem with_offsets(std::vector<double> d) const;

  private:
    Partition partition_;
    std::vector<AffineMap> maps_;
    std::vector<double> c_;
    std::vector<double> d_;
    std::vector<ScalingSpec> delta_;
    std::vector<ContractionSpec> s_;
    SystemMode mode_;
    double alpha_, c_max_, delta_max_, beta_;
};

/// Validates lengths, the shared modulus, and the admissibility bound for
/// the requested mode; computes the aggregates.
FractalSystem assemble_system(Partition partition, std::vector<double> c, std::vector<double> d,
                              std::vector<ScalingSpec> delta, std::vector<ContractionSpec> s,
                              SystemMode mode);

}  // namespace fractalhisto
