#ifndef FBA_GAUSSIAN_TAIL_HPP
#define FBA_GAUSSIAN_TAIL_HPP

#include <cmath>
#include <stdexcept>

#include "fba/log_arith.hpp"

namespace fba {

inline constexpr double log_two_pi = 1.8378770664093454836;

// log of the standard normal density.
inline double log_std_normal_pdf(double x) {
    return -0.5 * x * x - 0.5 * log_two_pi;
}

// Complementary Gaussian cdf Q(x) = P(N(0,1) > x).
inline double q_tail(double x) {
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

// log Q(x). erfc carries the value down to ~1e-306; beyond that the classic
// asymptotic series Q(x) = phi(x)/x * (1 - 1/x^2 + 3/x^4 - ...) takes over.
inline double q_tail_log(double x) {
    if (x < 30.0) {
        return std::log(0.5 * std::erfc(x / std::sqrt(2.0)));
    }
    double inv2 = 1.0 / (x * x);
    double series = 0.0, term = 1.0;
    for (int k = 0; k < 9; ++k) {
        series += term;
        term *= -(2.0 * k + 1.0) * inv2;
    }
    return log_std_normal_pdf(x) - std::log(x) + std::log(series);
}

namespace detail {

// Acklam's rational approximation to the lower-quantile function; worst-case
// relative error ~1.15e-9, refined below.
inline double norm_quantile_guess(double p) {
    static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;
    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p <= 1.0 - p_low) {
        double q = p - 0.5, r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

} // namespace detail

// Inverse of Q on the log scale: returns x with log Q(x) = log_eps.
// Newton iteration on the log-tail keeps the relative error flat all the way
// down to eps ~ 1e-300.
inline double q_inverse_log(double log_eps) {
    if (!(log_eps < 0.0)) throw std::domain_error("q_inverse: eps must lie in (0,1)");
    if (log_eps > std::log1p(-1e-300) - 1e-300) // eps indistinguishable from 1
        throw std::domain_error("q_inverse: eps must lie in (0,1)");
    double eps = std::exp(log_eps);
    double x;
    if (eps > 1e-300) {
        x = -detail::norm_quantile_guess(eps); // Q^{-1}(eps) = -Phi^{-1}(eps)
    } else {
        // start from the leading term of the tail inverse
        x = std::sqrt(-2.0 * (log_eps + 0.5 * log_two_pi));
    }
    for (int it = 0; it < 4; ++it) {
        double lq = q_tail_log(x);
        // d/dx log Q(x) = -phi(x)/Q(x)
        double step = (lq - log_eps) * std::exp(lq - log_std_normal_pdf(x));
        x += step;
        if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(x))) break;
    }
    return x;
}

// Inverse complementary Gaussian cdf, eps in (0,1).
inline double q_inverse(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("q_inverse: eps must lie in (0,1)");
    if (eps > 0.5) return -q_inverse_log(std::log1p(-eps));
    return q_inverse_log(std::log(eps));
}

inline double q_inverse(LogProb eps) { return q_inverse_log(eps.log_value); }

} // namespace fba

#endif
