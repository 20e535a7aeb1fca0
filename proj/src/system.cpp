#include "fractalhisto/system.hpp"

#include <cmath>
#include <sstream>

#include "fractalhisto/errors.hpp"

namespace fractalhisto {

namespace {

void check_length(std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
        std::ostringstream msg;
        msg << what << " has length " << got << ", expected N = " << want;
        throw ValidationError(msg.str());
    }
}

}  // namespace

FractalSystem::FractalSystem(Partition partition, std::vector<double> c, std::vector<double> d,
                             std::vector<ScalingSpec> delta, std::vector<ContractionSpec> s,
                             SystemMode mode)
    : partition_(std::move(partition)),
      maps_(derive_affine_maps(partition_)),
      c_(std::move(c)),
      d_(std::move(d)),
      delta_(std::move(delta)),
      s_(std::move(s)),
      mode_(mode) {
    alpha_ = 0.0;
    for (const auto& m : maps_) alpha_ = std::max(alpha_, std::fabs(m.a));
    c_max_ = 0.0;
    for (double cj : c_) c_max_ = std::max(c_max_, std::fabs(cj));
    delta_max_ = 0.0;
    for (const auto& dj : delta_) delta_max_ = std::max(delta_max_, dj.sup_abs(interval()));
    beta_ = s_.front().modulus().beta();
}

double FractalSystem::branch_value(std::size_t j, double u, double x) const {
    return c_[j] * u + delta_[j](u) * s_[j](x) + d_[j];
}

FractalSystem FractalSystem::with_offsets(std::vector<double> d) const {
    check_length(d.size(), branches(), "offset vector d");
    FractalSystem out = *this;
    out.d_ = std::move(d);
    return out;
}

FractalSystem assemble_system(Partition partition, std::vector<double> c, std::vector<double> d,
                              std::vector<ScalingSpec> delta, std::vector<ContractionSpec> s,
                              SystemMode mode) {
    const std::size_t N = partition.size();
    check_length(c.size(), N, "coefficient vector c");
    check_length(d.size(), N, "offset vector d");
    check_length(delta.size(), N, "scaling vector delta");
    check_length(s.size(), N, "contraction vector s");

    for (std::size_t j = 1; j < s.size(); ++j) {
        if (!s[j].modulus().same_as(s[0].modulus())) {
            std::ostringstream msg;
            msg << "all contractions must share one modulus; s[" << j << "] uses "
                << s[j].modulus().name() << " which differs from s[0]'s " << s[0].modulus().name();
            throw ConfigError(msg.str());
        }
    }

    FractalSystem sys(std::move(partition), std::move(c), std::move(d), std::move(delta),
                      std::move(s), mode);

    const double dm = sys.delta_max();
    const double beta = sys.beta();
    if (mode == SystemMode::histopolation && !(dm < 1.0)) {
        std::ostringstream msg;
        msg << "histopolation requires delta_max < 1: delta_max = " << dm << " (beta = " << beta
            << ")";
        throw AdmissibilityError(msg.str(), dm, beta);
    }
    if (beta < 1.0) {
        if (!(dm * beta < 1.0)) {
            std::ostringstream msg;
            msg << "admissibility requires delta_max * beta < 1: delta_max = " << dm
                << ", beta = " << beta << ", product = " << dm * beta;
            throw AdmissibilityError(msg.str(), dm, beta);
        }
    } else if (!(dm < 1.0)) {
        std::ostringstream msg;
        msg << "admissibility requires delta_max < 1 when beta = 1: delta_max = " << dm;
        throw AdmissibilityError(msg.str(), dm, beta);
    }
    return sys;
}

}  // namespace fractalhisto
