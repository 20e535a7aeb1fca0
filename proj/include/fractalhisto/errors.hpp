#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fractalhisto {

/// Error classes map onto CLI exit codes: validation -> 1,
/// non-convergence -> 2, I/O -> 3.
enum class ErrorClass { validation = 1, nonconvergence = 2, io = 3 };

class Error : public std::runtime_error {
  public:
    Error(ErrorClass cls, const std::string& msg) : std::runtime_error(msg), cls_(cls) {}
    ErrorClass cls() const { return cls_; }
    int exit_code() const { return static_cast<int>(cls_); }

  private:
    ErrorClass cls_;
};

class ValidationError : public Error {
  public:
    explicit ValidationError(const std::string& msg) : Error(ErrorClass::validation, msg) {}
};

/// Bad call arguments (arity, empty range, reversed bounds, ...).
class ArgumentError : public ValidationError {
  public:
    explicit ArgumentError(const std::string& msg) : ValidationError(msg) {}
};

/// Malformed or inconsistent configuration documents.
class ConfigError : public ValidationError {
  public:
    explicit ConfigError(const std::string& msg) : ValidationError(msg) {}
};

/// Vertical scaling factors violate the admissibility bound for the mode.
class AdmissibilityError : public ValidationError {
  public:
    AdmissibilityError(const std::string& msg, double delta_max, double beta)
        : ValidationError(msg), delta_max(delta_max), beta(beta) {}
    double delta_max;
    double beta;
};

/// A reciprocal contraction was evaluated too close to its pole.
class PoleProximityError : public ValidationError {
  public:
    PoleProximityError(const std::string& msg, double at) : ValidationError(msg), at(at) {}
    double at;
};

class ConvergenceError : public Error {
  public:
    ConvergenceError(const std::string& msg, long iterations, double last_residual,
                     std::vector<double> deltas = {})
        : Error(ErrorClass::nonconvergence, msg),
          iterations(iterations),
          last_residual(last_residual),
          sup_deltas(std::move(deltas)) {}
    long iterations;
    double last_residual;
    std::vector<double> sup_deltas;
};

class IoError : public Error {
  public:
    explicit IoError(const std::string& msg) : Error(ErrorClass::io, msg) {}
};

}  // namespace fractalhisto
