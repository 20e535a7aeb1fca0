#pragma once

#include <functional>
#include <memory>
#include <string>

#include "fractalhisto/interval.hpp"

namespace fractalhisto {

/// Guard radius around the reciprocal contraction's pole. Evaluating closer
/// than this raises PoleProximityError instead of clamping: a near-pole
/// value signals an inadmissible configuration, not a numerical hiccup.
inline constexpr double kPoleGuard = 1e-9;

enum class ModulusKind { linear, hyperbolic, custom };

/// Comparison function psi of a psi-contraction. Catalog kinds carry an
/// analytic beta = sup_{t>0} psi(t)/t; `custom` exists for additional kinds
/// (tests, future extensions) and carries a numerically estimated beta.
class ModulusSpec {
  public:
    static ModulusSpec linear(double k);  // psi(t) = k t, k in (0,1)
    static ModulusSpec hyperbolic();      // psi(t) = t / (1 + t)
    static ModulusSpec custom(std::function<double(double)> fn, double beta_estimate);

    double operator()(double t) const;
    ModulusKind kind() const { return kind_; }
    double beta() const { return beta_; }
    double param() const { return k_; }
    std::string name() const;

    /// Two specs denote the same modulus. Custom specs compare by identity.
    bool same_as(const ModulusSpec& other) const;

  private:
    ModulusSpec() = default;
    ModulusKind kind_ = ModulusKind::linear;
    double k_ = 0.0;
    double beta_ = 0.0;
    std::shared_ptr<const std::function<double(double)>> fn_;
};

enum class ContractionKind { linear, scaled_sine, reciprocal, scaled_tanh };

/// Catalog nonlinearity s_j, a Rakotch contraction against its modulus.
///   linear       s(x) = k x            vs psi(t) = k t
///   scaled_sine  s(x) = a sin(x)       vs psi(t) = |a| t
///   reciprocal   s(x) = 1 / (c + x)    vs psi(t) = t / (1 + t), c >= 1
///   scaled_tanh  s(x) = a tanh(x)      vs psi(t) = |a| t
class ContractionSpec {
  public:
    ContractionSpec(ContractionKind kind, double param, ModulusSpec modulus);

    /// Throws PoleProximityError within kPoleGuard of a reciprocal pole.
    double operator()(double x) const;

    ContractionKind kind() const { return kind_; }
    double param() const { return param_; }
    const ModulusSpec& modulus() const { return modulus_; }
    std::string name() const;

    bool has_pole() const { return kind_ == ContractionKind::reciprocal; }
    /// Distance from x to the pole; +inf for pole-free kinds.
    double pole_distance(double x) const;

  private:
    ContractionKind kind_;
    double param_;
    ModulusSpec modulus_;
};

enum class ScalingKind { constant, linear_in_t };

/// Vertical scaling factor delta_j, constant or linear in t.
class ScalingSpec {
  public:
    static ScalingSpec constant(double value);
    static ScalingSpec linear_in_t(double slope);  // delta(t) = slope * t

    double operator()(double t) const;
    ScalingKind kind() const { return kind_; }
    double param() const { return value_; }

    /// sup_{t in I} |delta(t)|, exact for both kinds.
    double sup_abs(const Interval& I) const;

  private:
    ScalingSpec(ScalingKind kind, double value) : kind_(kind), value_(value) {}
    ScalingKind kind_;
    double value_;
};

}  // namespace fractalhisto
