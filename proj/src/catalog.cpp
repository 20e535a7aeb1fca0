#include "fractalhisto/catalog.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fractalhisto/errors.hpp"

namespace fractalhisto {

ModulusSpec ModulusSpec::linear(double k) {
    if (!(k > 0.0) || !(k < 1.0)) {
        std::ostringstream msg;
        msg << "linear modulus needs k in (0,1), got k = " << k;
        throw ValidationError(msg.str());
    }
    ModulusSpec m;
    m.kind_ = ModulusKind::linear;
    m.k_ = k;
    m.beta_ = k;
    return m;
}

ModulusSpec ModulusSpec::hyperbolic() {
    ModulusSpec m;
    m.kind_ = ModulusKind::hyperbolic;
    m.beta_ = 1.0;
    return m;
}

ModulusSpec ModulusSpec::custom(std::function<double(double)> fn, double beta_estimate) {
    ModulusSpec m;
    m.kind_ = ModulusKind::custom;
    m.fn_ = std::make_shared<const std::function<double(double)>>(std::move(fn));
    m.beta_ = beta_estimate;
    return m;
}

double ModulusSpec::operator()(double t) const {
    switch (kind_) {
        case ModulusKind::linear: return k_ * t;
        case ModulusKind::hyperbolic: return t / (1.0 + t);
        case ModulusKind::custom: return (*fn_)(t);
    }
    return 0.0;
}

std::string ModulusSpec::name() const {
    switch (kind_) {
        case ModulusKind::linear: return "linear";
        case ModulusKind::hyperbolic: return "hyperbolic";
        case ModulusKind::custom: return "custom";
    }
    return "?";
}

bool ModulusSpec::same_as(const ModulusSpec& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
        case ModulusKind::linear: return k_ == other.k_;
        case ModulusKind::hyperbolic: return true;
        case ModulusKind::custom: return fn_ == other.fn_;
    }
    return false;
}

ContractionSpec::ContractionSpec(ContractionKind kind, double param, ModulusSpec modulus)
    : kind_(kind), param_(param), modulus_(std::move(modulus)) {
    if (!std::isfinite(param)) throw ValidationError("contraction parameter is not finite");
    if (kind_ == ContractionKind::reciprocal && !(param > 0.0)) {
        std::ostringstream msg;
        msg << "reciprocal contraction needs a positive offset, got c = " << param;
        throw ValidationError(msg.str());
    }
}

double ContractionSpec::operator()(double x) const {
    switch (kind_) {
        case ContractionKind::linear: return param_ * x;
        case ContractionKind::scaled_sine: return param_ * std::sin(x);
        case ContractionKind::scaled_tanh: return param_ * std::tanh(x);
        case ContractionKind::reciprocal: {
            const double den = param_ + x;
            if (std::fabs(den) < kPoleGuard) {
                std::ostringstream msg;
                msg << "reciprocal contraction evaluated within " << kPoleGuard
                    << " of its pole: x = " << x << ", pole at " << -param_;
                throw PoleProximityError(msg.str(), x);
            }
            return 1.0 / den;
        }
    }
    return 0.0;
}

std::string ContractionSpec::name() const {
    switch (kind_) {
        case ContractionKind::linear: return "linear";
        case ContractionKind::scaled_sine: return "scaled-sine";
        case ContractionKind::reciprocal: return "reciprocal";
        case ContractionKind::scaled_tanh: return "scaled-tanh";
    }
    return "?";
}

double ContractionSpec::pole_distance(double x) const {
    if (!has_pole()) return std::numeric_limits<double>::infinity();
    return std::fabs(param_ + x);
}

ScalingSpec ScalingSpec::constant(double value) {
    if (!std::isfinite(value)) throw ValidationError("scaling value is not finite");
    return ScalingSpec(ScalingKind::constant, value);
}

ScalingSpec ScalingSpec::linear_in_t(double slope) {
    if (!std::isfinite(slope)) throw ValidationError("scaling slope is not finite");
    return ScalingSpec(ScalingKind::linear_in_t, slope);
}

double ScalingSpec::operator()(double t) const {
    return kind_ == ScalingKind::constant ? value_ : value_ * t;
}

double ScalingSpec::sup_abs(const Interval& I) const {
    if (kind_ == ScalingKind::constant) return std::fabs(value_);
    return std::fabs(value_) * std::max(std::fabs(I.lo), std::fabs(I.hi));
}

}  // namespace fractalhisto
