#ifndef FBA_CUMULANTS_HPP
#define FBA_CUMULANTS_HPP

#include <cmath>

#include "fba/errors.hpp"

namespace fba {

// First four cumulants of a per-summand distribution (nats^j for the j-th).
// kappa2 = mu2, kappa3 = mu3, kappa4 = mu4 - 3 mu2^2.
struct CumulantSet {
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double kappa3 = 0.0;
    double kappa4 = 0.0;

    static CumulantSet from_central_moments(double mean, double mu2, double mu3, double mu4) {
        if (mu2 < 0.0) throw precondition_error("CumulantSet: negative variance");
        return CumulantSet{mean, mu2, mu3, mu4 - 3.0 * mu2 * mu2};
    }

    double skewness() const {
        if (kappa2 <= 0.0) throw precondition_error("CumulantSet: skewness undefined for kappa2 <= 0");
        return kappa3 / std::pow(kappa2, 1.5);
    }
};

} // namespace fba

#endif
