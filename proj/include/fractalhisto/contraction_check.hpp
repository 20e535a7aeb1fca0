#pragma once

#include <cstdint>
#include <optional>

#include "fractalhisto/catalog.hpp"
#include "fractalhisto/interval.hpp"

namespace fractalhisto {

/// Absolute slack absorbing floating-point noise in sample-based checks.
inline constexpr double kCheckTolerance = 1e-12;

/// Default sample-based verification domains. The contraction properties
/// are stated for all reals; checking is necessarily restricted to a range.
inline constexpr Interval kDefaultContractionRange{-10.0, 10.0};
inline constexpr Interval kDefaultModulusRange{0.0, 20.0};  // open at 0
inline constexpr int kDefaultPairCount = 10000;

struct PairWitness {
    double u = 0.0;
    double v = 0.0;
};

struct ContractionReport {
    long checked_pairs = 0;
    double max_violation = 0.0;  // max over pairs of |s(u)-s(v)| - psi(|u-v|)
    bool passed = false;         // max_violation <= kCheckTolerance
    std::optional<PairWitness> witness;  // worst violating pair, if any
};

/// Checks psi(t) < t at every sample and that t -> psi(t)/t is
/// non-increasing across consecutive samples, both within kCheckTolerance.
/// Samples cover (lo, hi] uniformly plus a geometric ladder toward lo.
ContractionReport verify_modulus(const ModulusSpec& m, Interval range, int n_samples);

/// Samples n_pairs pairs (u, v) uniformly from range (seeded, deterministic)
/// and reports the worst violation of |s(u) - s(v)| <= psi(|u - v|).
ContractionReport verify_contraction(const ContractionSpec& s, Interval range, int n_pairs,
                                     std::uint64_t seed);

/// Searches for a pair with |s(u) - s(v)| > k |u - v|, i.e. evidence that s
/// is not a Banach contraction with constant k. Samples uniform pairs plus a
/// geometric ladder from the left endpoint, where the known counterexamples
/// live.
std::optional<PairWitness> banach_witness(const ContractionSpec& s, double k, Interval range,
                                          int n_samples);

struct ScalarFixedPoint {
    double x = 0.0;
    long iterations = 0;
};

/// Picard iteration x <- s(x) until |s(x) - x| <= tol.
/// Throws ConvergenceError with the last iterate if max_iter is exhausted.
ScalarFixedPoint scalar_fixed_point(const ContractionSpec& s, double x0, double tol,
                                    long max_iter);

/// max over samples of psi(t)/t; the sample set includes a geometric
/// sequence approaching the left endpoint (the sup typically lives at 0+).
/// For catalog kinds this agrees with the analytic beta within 1e-6.
double estimate_beta(const ModulusSpec& m, Interval range, int n_samples);

}  // namespace fractalhisto
