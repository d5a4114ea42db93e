#ifndef FBA_MODERATE_DEVIATIONS_HPP
#define FBA_MODERATE_DEVIATIONS_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "fba/cumulants.hpp"
#include "fba/errors.hpp"
#include "fba/gaussian_tail.hpp"
#include "fba/log_arith.hpp"

namespace fba {

enum class TailSide { upper, lower };

// First two coefficients of the Cramer series lambda(u) = a0 + a1 u + ...
inline double cramer_a0(const CumulantSet& c) { return c.skewness() / 6.0; }
inline double cramer_a1(const CumulantSet& c) {
    return (c.kappa4 * c.kappa2 - 3.0 * c.kappa3 * c.kappa3) / (24.0 * std::pow(c.kappa2, 3));
}

// Cornish-Fisher coefficients for the moderate-deviations quantile inversion.
inline double cornish_fisher_b0(const CumulantSet& c) { return c.skewness() / 6.0; }
inline double cornish_fisher_b1(const CumulantSet& c) {
    return (3.0 * c.kappa4 * c.kappa2 - 4.0 * c.kappa3 * c.kappa3) / (72.0 * std::pow(c.kappa2, 3));
}

inline constexpr double md_guard_default = 0.1; // enforces x = o(sqrt(n)) at finite n

namespace detail {
inline void check_md_guard(double x, std::size_t n, double guard) {
    if (!(x > 0.0)) throw std::domain_error("moderate deviations: x must be positive");
    if (x > guard * std::sqrt(double(n)))
        throw std::domain_error("moderate deviations: x exceeds the o(sqrt(n)) guard");
}
} // namespace detail

// Log-tail of the standardized sum of n i.i.d. variables with the given
// per-summand cumulants, corrected by the truncated Cramer series:
//   upper: log P(S_n > x)  = log Q(x) + (x^3/sqrt(n)) (a0 + a1 x/sqrt(n))
//   lower: log P(S_n <= -x) = log Q(x) - (x^3/sqrt(n)) (a0 - a1 x/sqrt(n))
inline LogProb petrov_log_tail(const CumulantSet& c, std::size_t n, double x, TailSide side,
                               double guard = md_guard_default) {
    if (!(c.kappa2 > 0.0)) throw precondition_error("petrov_log_tail: kappa2 must be positive");
    detail::check_md_guard(x, n, guard);
    double u = x / std::sqrt(double(n));
    double a0 = cramer_a0(c), a1 = cramer_a1(c);
    double corr = (side == TailSide::upper) ? x * x * x / std::sqrt(double(n)) * (a0 + a1 * u)
                                            : -x * x * x / std::sqrt(double(n)) * (a0 - a1 * u);
    return LogProb(q_tail_log(x) + corr);
}

// Quantile inversion (F_n(-x) = Q(y)): x = y - b0 y^2 / sqrt(n) + b1 y^3 / n.
inline double cornish_fisher_md(const CumulantSet& c, std::size_t n, double y,
                                double guard = md_guard_default) {
    if (!(c.kappa2 > 0.0)) throw precondition_error("cornish_fisher_md: kappa2 must be positive");
    if (std::abs(y) > guard * std::sqrt(double(n)))
        throw std::domain_error("cornish_fisher_md: |y| exceeds the o(sqrt(n)) guard");
    double b0 = cornish_fisher_b0(c), b1 = cornish_fisher_b1(c);
    return y - b0 * y * y / std::sqrt(double(n)) + b1 * y * y * y / double(n);
}

} // namespace fba

#endif
